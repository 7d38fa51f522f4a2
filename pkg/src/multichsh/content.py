"""Lower bounds on the EPR2 nonlocal content from Bell violations."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .channels import PauliChannel
from .families import Family

METHODS = ("chsh-paired", "chsh-weighted", "generic-inequality", "closed-form")


@dataclass(frozen=True)
class ContentBound:
    p: float
    bound: float
    method: str
    m: float = math.nan
    prob: float = math.nan
    closed_form: Optional[float] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        object.__setattr__(self, "bound", min(1.0, max(0.0, float(self.bound))))


def epr2_bound(value: float, local_bound: float, ns_bound: float) -> float:
    """``max(0, (I - I_L) / (I_NS - I_L))``."""
    if not ns_bound > local_bound:
        raise ValueError(f"no-signalling bound {ns_bound} must exceed local bound {local_bound}")
    return max(0.0, (value - local_bound) / (ns_bound - local_bound))


def chsh_weighted_bound(m: float, prob: float) -> float:
    """Bound from one conditioned CHSH test: ``max(0, (m - 1) prob)``."""
    if m < 0 or not 0 <= prob <= 1:
        raise ValueError(f"need m >= 0 and prob in [0, 1], got m={m}, prob={prob}")
    return max(0.0, (2 * m - 2) * prob / 2)


def chsh_paired_bound(m: float) -> float:
    """Bound from the summed two-event inequality: ``max(0, m - 1)``."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    return max(0.0, m - 1)


def content_point(family: Family, channel: PauliChannel) -> ContentBound:
    m, prob = family.conditioned(channel)
    if math.isnan(m):
        m = 0.0
    if family.method == "chsh-weighted":
        bound = chsh_weighted_bound(m, prob)
    else:
        bound = chsh_paired_bound(m)
    return ContentBound(channel.p, bound, family.method, m, prob, family.closed_form(channel))


def content_curve(family: Family, channel: PauliChannel, p_grid: Sequence[float],
                  workers: int = 1, check_closed_form: float | None = 1e-9) -> list[ContentBound]:
    """Content bound at every ``p`` in ``p_grid`` from the actual noisy matrix.

    Where the family has a closed-form Horodecki value, the numeric value must
    agree with it to ``check_closed_form`` (skip with ``None``).
    """
    chans = [channel.with_p(float(p)) for p in p_grid]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            out = list(pool.map(lambda ch: content_point(family, ch), chans))
    else:
        out = [content_point(family, ch) for ch in chans]
    if check_closed_form is not None:
        for b in out:
            if b.closed_form is not None and abs(b.m - b.closed_form) > check_closed_form:
                raise ArithmeticError(
                    f"numeric value {b.m!r} disagrees with closed form {b.closed_form!r} at p={b.p}")
    return out


def ghz_z_content(n: int, p: float) -> float:
    return math.sqrt(1 + (1 - p) ** (2 * n)) - 1


def ghz_x_content(p: float) -> float:
    return math.sqrt(1 + (1 - p) ** 4) - 1


def w_z_content(n: int, p: float) -> float:
    return (2 * math.sqrt(1 + (1 - p) ** 4) - 2) / n


def star_z_content(p: float) -> float:
    return max(0.0, (1 - p) * math.sqrt(2) - 1)
