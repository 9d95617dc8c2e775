"""Training-dynamics diagnostics from epoch logs and gradient traces.

Undefined and unreached outcomes are first-class values here, not
errors: tsi returns None when the training-loss tail is flat to within
1e-15, tei returns None when the accuracy threshold is never crossed,
and the relative metrics propagate those flags. The report layer maps
None onto explicit status markers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidArgumentError

DEFAULT_TAIL_FRACTION = 0.10
DEFAULT_ACCURACY_THRESHOLD = 0.90

_FLAT_TOL = 1e-15

RATIO = "ratio"
HYBRID_UNREACHED = "hybrid_unreached"
CLASSICAL_UNREACHED = "classical_unreached"
BOTH_UNREACHED = "both_unreached"


@dataclass(frozen=True)
class EpochRecord:
    """One row of a training log."""

    epoch: int
    train_loss: float
    val_loss: float
    val_accuracy: float

    def __post_init__(self) -> None:
        for name in ("train_loss", "val_loss", "val_accuracy"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"{name} must be finite")
        if not 0.0 <= self.val_accuracy <= 1.0:
            raise InvalidArgumentError(
                f"val_accuracy must lie in [0, 1], got {self.val_accuracy}"
            )


@dataclass(frozen=True)
class TrainingLog:
    """A strictly epoch-ordered training history for one model."""

    records: tuple[EpochRecord, ...]
    num_params: int

    def __init__(self, records: Iterable[EpochRecord], num_params: int) -> None:
        object.__setattr__(self, "records", tuple(records))
        object.__setattr__(self, "num_params", int(num_params))
        if not self.records:
            raise InvalidArgumentError("training log must have at least one epoch")
        if self.num_params < 1:
            raise InvalidArgumentError("num_params must be at least 1")
        for prev, nxt in zip(self.records, self.records[1:]):
            if nxt.epoch <= prev.epoch:
                raise InvalidArgumentError(
                    f"epochs must be strictly increasing, got {prev.epoch} "
                    f"then {nxt.epoch}"
                )

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class GradientEntry:
    """One recorded gradient vector."""

    epoch: int
    grads: tuple[float, ...]

    def __init__(self, epoch: int, grads: Iterable[float]) -> None:
        object.__setattr__(self, "epoch", int(epoch))
        object.__setattr__(self, "grads", tuple(float(g) for g in grads))
        if not self.grads:
            raise InvalidArgumentError("gradient vector must be non-empty")
        if not all(math.isfinite(g) for g in self.grads):
            raise InvalidArgumentError("gradient vector must be finite")


@dataclass(frozen=True)
class GradientLog:
    """Gradient observations in non-decreasing epoch order.

    Repeated epochs are allowed (per-batch observations within one
    epoch).
    """

    entries: tuple[GradientEntry, ...]

    def __init__(self, entries: Iterable[GradientEntry]) -> None:
        object.__setattr__(self, "entries", tuple(entries))
        if not self.entries:
            raise InvalidArgumentError("gradient log must have at least one entry")
        for prev, nxt in zip(self.entries, self.entries[1:]):
            if nxt.epoch < prev.epoch:
                raise InvalidArgumentError(
                    f"epochs must be non-decreasing, got {prev.epoch} then {nxt.epoch}"
                )


def tail_window(total_epochs: int, tail_fraction: float = DEFAULT_TAIL_FRACTION) -> int:
    """Number of trailing epochs the stability metric looks at."""
    if not 0.0 < tail_fraction <= 1.0:
        raise InvalidArgumentError(
            f"tail_fraction must lie in (0, 1], got {tail_fraction}"
        )
    return max(2, math.ceil(tail_fraction * total_epochs))


def tsi(log: TrainingLog, tail_fraction: float = DEFAULT_TAIL_FRACTION) -> float | None:
    """Stability: sigma(val_loss) / sigma(train_loss) over the log tail.

    Standard deviations are population (divide by the window size).
    Returns None when the training tail is flat to within 1e-15 (the
    ratio is undefined), e.g. a converged-to-machine-precision run.
    """
    window = tail_window(len(log), tail_fraction)
    if len(log) < 2:
        raise InvalidArgumentError("stability needs at least 2 epochs")
    tail = log.records[-window:]
    train = np.array([r.train_loss for r in tail])
    val = np.array([r.val_loss for r in tail])
    sigma_train = float(np.std(train))
    if sigma_train < _FLAT_TOL:
        return None
    return float(np.std(val)) / sigma_train


def tei(
    log: TrainingLog, accuracy_threshold: float = DEFAULT_ACCURACY_THRESHOLD
) -> float | None:
    """Efficiency: first threshold-crossing epoch over parameter count.

    The crossing is strict (val_accuracy > threshold); the epoch is the
    record's own epoch number. Returns None when the threshold is never
    crossed. Lower is better: fewer epochs per parameter.
    """
    if not 0.0 <= accuracy_threshold < 1.0:
        raise InvalidArgumentError(
            f"accuracy_threshold must lie in [0, 1), got {accuracy_threshold}"
        )
    for record in log.records:
        if record.val_accuracy > accuracy_threshold:
            return record.epoch / log.num_params
    return None


def qgn(grads: GradientLog, epoch: int | None = None) -> float:
    """L2 norm of the gradient vector at ``epoch`` (default: last entry).

    With repeated epochs the last entry for that epoch wins.
    """
    entry = _select_entry(grads, epoch)
    return float(np.linalg.norm(np.asarray(entry.grads)))


def qgn_series(grads: GradientLog) -> tuple[tuple[int, float], ...]:
    """Per-entry (epoch, norm) pairs in log order."""
    return tuple(
        (e.epoch, float(np.linalg.norm(np.asarray(e.grads)))) for e in grads.entries
    )


def bpi(grads: GradientLog) -> float:
    """Plateau indicator: mean squared gradient norm over all entries.

    For a single entry this is exactly qgn**2; values collapsing toward
    zero signal vanishing gradients.
    """
    norms_sq = [float(np.asarray(e.grads) @ np.asarray(e.grads)) for e in grads.entries]
    return float(np.mean(norms_sq))


def rqlsi(
    hybrid: TrainingLog,
    classical: TrainingLog,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
) -> float | None:
    """Relative stability: tsi(hybrid) / tsi(classical).

    Returns None (undefined) when either stability is undefined or the
    classical stability is zero. Values below 1 mean the hybrid model's
    validation loss is the steadier of the two.
    """
    t_h = tsi(hybrid, tail_fraction)
    t_c = tsi(classical, tail_fraction)
    if t_h is None or t_c is None or t_c <= 0.0:
        return None
    return t_h / t_c


@dataclass(frozen=True)
class RelativeEfficiency:
    """Outcome of the relative-efficiency comparison.

    ``status`` is "ratio" (with ``value`` = tei_hybrid / tei_classical)
    or one of "hybrid_unreached", "classical_unreached",
    "both_unreached" when a side never crossed the accuracy threshold.
    A hybrid-only miss means the ratio diverges (reported as infinite).
    """

    status: str
    value: float | None = None

    def __post_init__(self) -> None:
        valid = (RATIO, HYBRID_UNREACHED, CLASSICAL_UNREACHED, BOTH_UNREACHED)
        if self.status not in valid:
            raise InvalidArgumentError(f"status must be one of {valid}")
        if (self.status == RATIO) != (self.value is not None):
            raise InvalidArgumentError("value is present exactly for status 'ratio'")


def rqtei(
    hybrid: TrainingLog,
    classical: TrainingLog,
    accuracy_threshold: float = DEFAULT_ACCURACY_THRESHOLD,
) -> RelativeEfficiency:
    """Relative efficiency: tei(hybrid) / tei(classical), or why not."""
    t_h = tei(hybrid, accuracy_threshold)
    t_c = tei(classical, accuracy_threshold)
    if t_h is None and t_c is None:
        return RelativeEfficiency(BOTH_UNREACHED)
    if t_h is None:
        return RelativeEfficiency(HYBRID_UNREACHED)
    if t_c is None:
        return RelativeEfficiency(CLASSICAL_UNREACHED)
    return RelativeEfficiency(RATIO, t_h / t_c)


@dataclass(frozen=True)
class TrainingMetricsReport:
    """Single-model training metrics; None marks undefined/unreached."""

    tsi: float | None
    tei: float | None
    qgn: float | None
    qgn_series: tuple[tuple[int, float], ...] | None
    bpi: float | None
    num_params: int
    tail_fraction: float
    accuracy_threshold: float


def compute_training_metrics(
    log: TrainingLog,
    grads: GradientLog | None = None,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    accuracy_threshold: float = DEFAULT_ACCURACY_THRESHOLD,
    gradient_epoch: int | None = None,
) -> TrainingMetricsReport:
    """Run the single-model training battery; gradient metrics only when
    a gradient log is supplied."""
    return TrainingMetricsReport(
        tsi=tsi(log, tail_fraction),
        tei=tei(log, accuracy_threshold),
        qgn=None if grads is None else qgn(grads, gradient_epoch),
        qgn_series=None if grads is None else qgn_series(grads),
        bpi=None if grads is None else bpi(grads),
        num_params=log.num_params,
        tail_fraction=tail_fraction,
        accuracy_threshold=accuracy_threshold,
    )


def _select_entry(grads: GradientLog, epoch: int | None) -> GradientEntry:
    if epoch is None:
        return grads.entries[-1]
    for entry in reversed(grads.entries):
        if entry.epoch == epoch:
            return entry
    raise InvalidArgumentError(f"no gradient entry for epoch {epoch}")
