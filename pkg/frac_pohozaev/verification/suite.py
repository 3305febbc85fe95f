"""The acceptance matrix run by ``fracpoho suite all``."""

from __future__ import annotations

from typing import Any

from ..schemas.run_config import RunConfig


def _pad(coords: tuple[float, ...], dim: int) -> list[float]:
    padded = list(coords[:dim])
    return padded + [0.0] * (dim - len(padded))


def _fractional_orders(dim: int) -> list[int] | None:
    return [1] if dim == 1 else None


def acceptance_suite(dim: int) -> list[RunConfig]:
    """Return the run configurations of the acceptance matrix for dimension ``dim``.

    Fractional identities run in dimensions 1 to 3 (the general-ξ ones need N > 2s with
    s > 1/2, hence N >= 2); the classical identities need N > 2. Above N = 3 only the
    centre case of the Robin identity is run, on a sampled sphere rule.
    """

    runs: list[dict[str, Any]] = []
    orders = _fractional_orders(dim)
    if dim > 3:
        # Only the centre case is exact under an equal-weight sampled sphere rule.
        return [
            RunConfig(N=dim, identity_id="robin", s=s, x=_pad((), dim), orders=[4], sampled=True)
            for s in (0.1, 0.25, 0.5, 0.75, 0.9)
        ]
    small = [s for s in (0.1, 0.25, 0.5, 0.75, 0.9) if dim > 2 * s]
    for s in small:
        runs.append({"identity_id": "robin", "s": s, "x": _pad((), dim), "orders": orders})
    for s in (0.3, 0.5, 0.7):
        if dim > 2 * s:
            runs.append(
                {"identity_id": "robin", "s": s, "x": _pad((0.3, 0.1, -0.2), dim), "orders": orders}
            )

    pairs = [((0.2, 0.0, 0.0), (0.0, 0.3, 0.0)), ((-0.4, 0.1, 0.0), (0.3, 0.0, 0.2)), ((0.5,), (-0.1,))]
    for s in (0.3, 0.5, 0.75):
        if dim <= 2 * s:
            continue
        for x, y in pairs:
            runs.append(
                {
                    "identity_id": "bilinear",
                    "s": s,
                    "x": _pad(x, dim),
                    "y": _pad(y, dim),
                    "orders": orders,
                }
            )

    centres = [(0.0, 0.0, 0.9), (0.5, 0.5, 0.5), (2.0, -1.0, 0.5)]
    for s in (0.6, 0.75, 0.9):
        if dim <= 2 * s:
            continue
        for xi in centres:
            runs.append(
                {
                    "identity_id": "bilinear-general",
                    "s": s,
                    "x": _pad((0.2, 0.0, 0.0), dim),
                    "y": _pad((0.0, 0.3, 0.0), dim),
                    "xi": _pad(xi, dim),
                }
            )
        runs.append(
            {
                "identity_id": "difference",
                "s": s,
                "x": _pad((0.2, 0.0, 0.0), dim),
                "y": _pad((0.0, 0.3, 0.0), dim),
            }
        )

    if dim > 2:
        x = _pad((0.1, 0.0, 0.0), dim)
        y = _pad((0.0, 0.2, 0.0), dim)
        xi = _pad((0.5, 0.5, 0.5), dim)
        runs.append({"identity_id": "local", "s": 1.0, "x": x, "y": y, "xi": xi})
        runs.extend(
            {"identity_id": "local-vector", "s": 1.0, "x": x, "y": y, "axis": axis}
            for axis in range(dim)
        )
        runs.append({"identity_id": "local-robin", "s": 1.0, "x": _pad((0.3,), dim)})
        runs.append({"identity_id": "mollified", "s": 1.0, "x": x, "y": y, "xi": xi})

    return [RunConfig(N=dim, **run) for run in runs]
