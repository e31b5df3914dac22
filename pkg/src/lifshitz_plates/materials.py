"""Dielectric models evaluated on the positive imaginary frequency axis.

Every model is specified directly as ``eps(i xi)`` with ``xi`` in rad/s; no
real-frequency response is implemented.  The rough-plate description pairs a
dissipative bulk conductor with a thin dissipation-free surface layer whose
squared plasma frequency is reduced by the metallic fill fraction of the
rough region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class Vacuum:
    """Empty space, eps = 1 at every frequency."""


@dataclass(frozen=True)
class PerfectReflector:
    """Ideal mirror marker: reflection coefficients are forced to |r| = 1.

    No permittivity is defined; the reflection layer handles this model
    directly.
    """


@dataclass(frozen=True)
class Drude:
    """Ohmic conductor: eps(i xi) = 1 + plasma^2 / (xi (xi + relaxation))."""

    plasma_frequency: float      # rad/s
    relaxation_frequency: float  # rad/s

    def __post_init__(self) -> None:
        if not self.plasma_frequency > 0.0:
            raise ValueError("Drude plasma frequency must be > 0")
        if self.relaxation_frequency < 0.0:
            raise ValueError("Drude relaxation frequency must be >= 0")


@dataclass(frozen=True)
class Plasma:
    """Dissipation-free conductor: eps(i xi) = 1 + plasma^2 / xi^2."""

    plasma_frequency: float  # rad/s

    def __post_init__(self) -> None:
        if not self.plasma_frequency > 0.0:
            raise ValueError("plasma frequency must be > 0")


@dataclass(frozen=True)
class Oscillator:
    """One Lorentz oscillator: strength / (resonance^2 + xi^2 + damping xi)."""

    strength: float   # rad^2/s^2
    resonance: float  # rad/s
    damping: float    # rad/s

    def __post_init__(self) -> None:
        if self.strength < 0.0:
            raise ValueError("oscillator strength must be >= 0")
        if not self.resonance > 0.0:
            raise ValueError("oscillator resonance must be > 0")
        if self.damping < 0.0:
            raise ValueError("oscillator damping must be >= 0")


@dataclass(frozen=True)
class OscillatorSum:
    """Sum of Lorentz oscillators, e.g. an interband-transition contribution.

    The oscillator parameters are user-supplied configuration; the default
    everywhere in this package is the empty list.
    """

    oscillators: tuple[Oscillator, ...] = ()

    def __init__(self, oscillators: Iterable = ()) -> None:
        normalized = tuple(
            osc if isinstance(osc, Oscillator) else Oscillator(*osc)
            for osc in oscillators
        )
        object.__setattr__(self, "oscillators", normalized)


@dataclass(frozen=True)
class Composite:
    """Model whose members' (eps - 1) contributions add."""

    terms: tuple[DielectricModel, ...] = ()

    def __init__(self, terms: Iterable = ()) -> None:
        terms = tuple(terms)
        for term in terms:
            if isinstance(term, PerfectReflector):
                raise ValueError("PerfectReflector cannot be a Composite member")
        object.__setattr__(self, "terms", terms)


DielectricModel = Union[Vacuum, PerfectReflector, Drude, Plasma, OscillatorSum, Composite]


def permittivity_imag_axis(model: DielectricModel, xi: ArrayLike) -> ArrayLike:
    """Evaluate eps(i xi) for ``xi > 0`` (rad/s), scalar or array.

    The xi = 0 point is never evaluated here; reflection coefficients at zero
    frequency are obtained from the analytic limits in :mod:`lifshitz_plates.stack`.
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0.0):
        raise ValueError("xi must be strictly positive; the xi=0 point is handled at reflection level")
    eps = _eps_minus_one(model, xi) + 1.0
    return eps if eps.ndim else float(eps)


def _eps_minus_one(model: DielectricModel, xi: np.ndarray) -> np.ndarray:
    if isinstance(model, Vacuum):
        return np.zeros_like(xi)
    if isinstance(model, Drude):
        return model.plasma_frequency**2 / (xi * (xi + model.relaxation_frequency))
    if isinstance(model, Plasma):
        return model.plasma_frequency**2 / xi**2
    if isinstance(model, OscillatorSum):
        total = np.zeros_like(xi)
        for osc in model.oscillators:
            total += osc.strength / (osc.resonance**2 + xi**2 + osc.damping * xi)
        return total
    if isinstance(model, Composite):
        total = np.zeros_like(xi)
        for term in model.terms:
            total += _eps_minus_one(term, xi)
        return total
    if isinstance(model, PerfectReflector):
        raise ValueError("no permittivity defined; handled at reflection level")
    raise TypeError(f"unknown dielectric model: {model!r}")


def static_limit(model: DielectricModel) -> tuple[int, float]:
    """Low-frequency behavior of eps(i xi): returns (order, amplitude).

    eps(i xi) ~ amplitude / xi**order as xi -> 0+, with order 0 for
    dielectrics (amplitude = eps(0)), 1 for ohmic conductors
    (amplitude = plasma^2 / relaxation) and 2 for dissipation-free
    conductors (amplitude = plasma^2).  For a Composite, the fastest
    divergence wins and amplitudes at that order add.
    """
    if isinstance(model, Vacuum):
        return 0, 1.0
    if isinstance(model, Drude):
        if model.relaxation_frequency == 0.0:
            return 2, model.plasma_frequency**2
        return 1, model.plasma_frequency**2 / model.relaxation_frequency
    if isinstance(model, Plasma):
        return 2, model.plasma_frequency**2
    if isinstance(model, OscillatorSum):
        eps0 = 1.0 + sum(osc.strength / osc.resonance**2 for osc in model.oscillators)
        return 0, eps0
    if isinstance(model, Composite):
        parts = [static_limit(term) for term in model.terms]
        order = max((o for o, _ in parts), default=0)
        if order == 0:
            return 0, 1.0 + sum(amp - 1.0 for _, amp in parts)
        return order, sum(amp for o, amp in parts if o == order)
    if isinstance(model, PerfectReflector):
        raise ValueError("no permittivity defined; handled at reflection level")
    raise TypeError(f"unknown dielectric model: {model!r}")


def surface_plasma_frequency(plasma_frequency: float, fill_factor: float) -> float:
    """Plasma frequency of the rough surface layer: sqrt(f) * bulk value.

    The squared plasma frequency scales with the free-electron density, and
    only a fraction ``fill_factor`` of the surface layer is occupied by metal.
    """
    if not plasma_frequency > 0.0:
        raise ValueError("plasma frequency must be > 0")
    if not 0.0 < fill_factor <= 1.0:
        raise ValueError("fill factor must lie in (0, 1]")
    return math.sqrt(fill_factor) * plasma_frequency


@dataclass(frozen=True)
class BulkMetal:
    """Drude parameters of the bulk conductor plus an optional interband term."""

    plasma_frequency: float      # rad/s
    relaxation_frequency: float  # rad/s
    interband: OscillatorSum | None = None

    def __post_init__(self) -> None:
        Drude(self.plasma_frequency, self.relaxation_frequency)  # validates


@dataclass(frozen=True)
class RoughPlateSpec:
    """Two-layer description of a rough metallic plate.

    A thick bulk conductor (Drude, optionally with an interband oscillator
    sum) covered by a plane-parallel surface layer of thickness
    ``layer_thickness`` whose permittivity is the dissipation-free plasma
    model with squared plasma frequency reduced by ``fill_factor``.
    """

    bulk: DielectricModel
    surface: DielectricModel
    layer_thickness: float  # m
    fill_factor: float      # dimensionless

    def __post_init__(self) -> None:
        if self.layer_thickness < 0.0:
            raise ValueError("layer thickness must be >= 0")
        if not 0.0 < self.fill_factor <= 1.0:
            raise ValueError("fill factor must lie in (0, 1]")
        bulk_w = _find_plasma_frequency(self.bulk, Drude)
        surf_w = _find_plasma_frequency(self.surface, Plasma)
        expected = surface_plasma_frequency(bulk_w, self.fill_factor)
        if not math.isclose(surf_w, expected, rel_tol=1e-12):
            raise ValueError(
                "surface plasma frequency must equal sqrt(fill_factor) x bulk plasma frequency"
            )


def _find_plasma_frequency(model: DielectricModel, kind: type) -> float:
    """Plasma frequency of the unique Drude/Plasma member of ``model``."""
    if isinstance(model, kind):
        return model.plasma_frequency
    if isinstance(model, Composite):
        hits = [t.plasma_frequency for t in model.terms if isinstance(t, kind)]
        if len(hits) == 1:
            return hits[0]
    raise ValueError(f"expected exactly one {kind.__name__} term in {model!r}")


def build_rough_plate(
    plasma_frequency: float,
    relaxation_frequency: float,
    layer_thickness: float,
    fill_factor: float,
    interband: OscillatorSum | None = None,
) -> RoughPlateSpec:
    """Assemble the two-layer rough-plate model from bulk gold-like parameters.

    The same interband oscillator sum, when given and non-empty, is added to
    both the bulk and the surface permittivity; otherwise neither carries it.
    """
    bulk: DielectricModel = Drude(plasma_frequency, relaxation_frequency)
    surface: DielectricModel = Plasma(
        surface_plasma_frequency(plasma_frequency, fill_factor)
    )
    if interband is not None and interband.oscillators:
        bulk = Composite((bulk, interband))
        surface = Composite((surface, interband))
    return RoughPlateSpec(
        bulk=bulk,
        surface=surface,
        layer_thickness=layer_thickness,
        fill_factor=fill_factor,
    )
