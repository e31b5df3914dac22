"""Reflection coefficients of a layered plate at imaginary frequencies.

A plate is vacuum | (optional finite layers) | substrate half-space.  For
``xi > 0`` the coefficients follow from the Fresnel formulas combined
right-to-left through the layers; the ``xi = 0`` point is dispatched to
model-aware analytic limits because the conductor permittivities diverge
there (Drude like 1/xi, plasma like 1/xi^2) and a naive evaluation produces
0 * inf forms.

Sign convention (fixed for testability; only r^2 is observable in the
pressure): r_TE = (s_i - s_j)/(s_i + s_j), r_TM = (eps_j s_i - eps_i s_j) /
(eps_j s_i + eps_i s_j), with the perfect reflector pinned to r_TM = +1,
r_TE = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Union

import numpy as np

from .constants import CONSTANTS
from .materials import (
    ArrayLike,
    DielectricModel,
    PerfectReflector,
    RoughPlateSpec,
    Vacuum,
    permittivity_imag_axis,
    static_limit,
)

Polarization = Literal["TE", "TM"]

# exp(-2 h s) below this argument underflows to an exact zero
_EXP_UNDERFLOW = 700.0


@dataclass(frozen=True)
class LayerStack:
    """One plate: vacuum incidence, finite layers, substrate half-space.

    Layers are (model, thickness m) ordered from the vacuum side inward.
    Zero-thickness layers are dropped at construction; the substrate must be
    a material (never vacuum).
    """

    layers: tuple[tuple[DielectricModel, float], ...]
    substrate: DielectricModel

    def __init__(
        self,
        layers: Iterable[tuple[DielectricModel, float]] = (),
        substrate: DielectricModel = None,  # type: ignore[assignment]
    ) -> None:
        if substrate is None or isinstance(substrate, Vacuum):
            raise ValueError("substrate must be a non-vacuum material half-space")
        kept = []
        for model, thickness in layers:
            if isinstance(model, PerfectReflector):
                raise ValueError("PerfectReflector cannot be a finite-thickness layer")
            if thickness < 0.0:
                raise ValueError("layer thickness must be >= 0")
            if thickness > 0.0:
                kept.append((model, float(thickness)))
        object.__setattr__(self, "layers", tuple(kept))
        object.__setattr__(self, "substrate", substrate)


@dataclass(frozen=True)
class KinematicPoint:
    """Matsubara frequency (rad/s, >= 0) and transverse wavenumber (1/m, > 0)."""

    xi: float
    k_perp: float

    def __post_init__(self) -> None:
        if self.xi < 0.0:
            raise ValueError("xi must be >= 0")
        if not self.k_perp > 0.0:
            raise ValueError("k_perp must be > 0")


def as_layer_stack(plate: Union[RoughPlateSpec, LayerStack]) -> LayerStack:
    """Coerce a rough-plate description (or pass a stack through)."""
    if isinstance(plate, LayerStack):
        return plate
    if isinstance(plate, RoughPlateSpec):
        layers = ()
        if plate.layer_thickness > 0.0:
            layers = ((plate.surface, plate.layer_thickness),)
        return LayerStack(layers=layers, substrate=plate.bulk)
    raise TypeError(f"expected RoughPlateSpec or LayerStack, got {plate!r}")


def axial_wavenumber(eps: ArrayLike, xi: ArrayLike, k_perp: ArrayLike) -> ArrayLike:
    """s = sqrt(eps(i xi) xi^2 / c^2 + k_perp^2), the decay constant along the axis."""
    return np.sqrt(np.asarray(eps) * (np.asarray(xi) / CONSTANTS.c) ** 2 + np.asarray(k_perp) ** 2)


def fresnel(
    polarization: Polarization,
    eps_i: ArrayLike,
    eps_j: ArrayLike,
    s_i: ArrayLike,
    s_j: ArrayLike,
) -> ArrayLike:
    """Single-interface reflection coefficient from medium i onto medium j."""
    if polarization == "TE":
        return (s_i - s_j) / (s_i + s_j)
    if polarization == "TM":
        return (eps_j * s_i - eps_i * s_j) / (eps_j * s_i + eps_i * s_j)
    raise ValueError(f"polarization must be 'TE' or 'TM', got {polarization!r}")


def _decayed(exponent: np.ndarray) -> np.ndarray:
    """exp(-exponent) with large arguments flushed to an exact zero."""
    exponent = np.asarray(exponent)
    safe = np.minimum(exponent, _EXP_UNDERFLOW)
    return np.where(exponent > _EXP_UNDERFLOW, 0.0, np.exp(-safe))


def _combine(r_outer: ArrayLike, r_inner: ArrayLike, phase: ArrayLike) -> ArrayLike:
    return (r_outer + r_inner * phase) / (1.0 + r_outer * r_inner * phase)


def _reflection(
    stack: LayerStack, polarization: Polarization, xi: ArrayLike, k_perp: ArrayLike
) -> ArrayLike:
    """Plate reflection coefficient for xi > 0 (vectorized, broadcasting)."""
    xi = np.asarray(xi, dtype=float)
    k_perp = np.asarray(k_perp, dtype=float)
    media = [Vacuum(), *(model for model, _ in stack.layers)]
    eps = [permittivity_imag_axis(m, xi) for m in media]
    s = [axial_wavenumber(e, xi, k_perp) for e in eps]

    mirror = isinstance(stack.substrate, PerfectReflector)
    if mirror:
        r = np.broadcast_to(1.0 if polarization == "TM" else -1.0, np.broadcast_shapes(xi.shape, k_perp.shape))
    else:
        eps_sub = permittivity_imag_axis(stack.substrate, xi)
        s_sub = axial_wavenumber(eps_sub, xi, k_perp)
        r = fresnel(polarization, eps[-1], eps_sub, s[-1], s_sub)

    for j in range(len(stack.layers), 0, -1):
        thickness = stack.layers[j - 1][1]
        phase = _decayed(2.0 * thickness * s[j])
        r = _combine(fresnel(polarization, eps[j - 1], eps[j], s[j - 1], s[j]), r, phase)
    return r


def plate_reflection(
    stack: LayerStack, polarization: Polarization, point: KinematicPoint
) -> float:
    """Reflection coefficient of the plate at a Matsubara point with xi > 0."""
    if not point.xi > 0.0:
        raise ValueError("xi must be > 0 here; use plate_reflection_zero_frequency at xi = 0")
    return float(_reflection(stack, polarization, point.xi, point.k_perp))


def _static_reflection(
    stack: LayerStack, polarization: Polarization, k_perp: ArrayLike
) -> ArrayLike:
    """Analytic xi -> 0 limit of the plate reflection coefficient."""
    k_perp = np.asarray(k_perp, dtype=float)
    media = [Vacuum(), *(model for model, _ in stack.layers)]
    limits = [static_limit(m) for m in media]
    # eps xi^2 survives the limit only for 1/xi^2 divergences (plasma-like)
    s = [
        axial_wavenumber(1.0, 0.0, k_perp) if order < 2
        else np.sqrt(k_perp**2 + amplitude / CONSTANTS.c**2)
        for order, amplitude in limits
    ]

    mirror = isinstance(stack.substrate, PerfectReflector)
    if mirror:
        r = np.broadcast_to(1.0 if polarization == "TM" else -1.0, k_perp.shape)
    else:
        limits.append(static_limit(stack.substrate))
        order, amplitude = limits[-1]
        s.append(
            axial_wavenumber(1.0, 0.0, k_perp) if order < 2
            else np.sqrt(k_perp**2 + amplitude / CONSTANTS.c**2)
        )
        r = _static_fresnel(polarization, limits[-2], limits[-1], s[-2], s[-1])

    for j in range(len(stack.layers), 0, -1):
        thickness = stack.layers[j - 1][1]
        phase = _decayed(2.0 * thickness * s[j])
        r = _combine(_static_fresnel(polarization, limits[j - 1], limits[j], s[j - 1], s[j]), r, phase)
    return r


def _static_fresnel(polarization, limit_i, limit_j, s_i, s_j):
    """Interface coefficient in the xi -> 0 limit.

    TE needs only the limiting axial wavenumbers.  For TM the permittivity
    ratio decides: the faster-diverging side wins outright (+1 when it is
    the far side, -1 when it is the near side); at equal divergence order
    the amplitudes take the place of the permittivities.
    """
    order_i, amp_i = limit_i
    order_j, amp_j = limit_j
    if polarization == "TE":
        return fresnel("TE", 1.0, 1.0, s_i, s_j)
    if order_j > order_i:
        return np.ones(np.broadcast_shapes(np.shape(s_i), np.shape(s_j)))
    if order_i > order_j:
        return -np.ones(np.broadcast_shapes(np.shape(s_i), np.shape(s_j)))
    return fresnel("TM", amp_i, amp_j, s_i, s_j)


def plate_reflection_zero_frequency(
    stack: LayerStack, polarization: Polarization, k_perp: ArrayLike
) -> ArrayLike:
    """xi -> 0 limit of the plate reflection coefficient.

    Drude half-space: r_TE -> 0 exactly, r_TM -> 1.  Plasma-like media keep
    a nonzero TE reflection because eps xi^2 -> plasma^2 survives the limit.
    Finite-eps dielectrics reflect only in TM, with the static permittivity.
    """
    if np.any(np.asarray(k_perp) <= 0.0):
        raise ValueError("k_perp must be > 0")
    r = _static_reflection(stack, polarization, k_perp)
    return float(r) if np.ndim(r) == 0 else np.asarray(r)
