"""
Time-window dynamics of multi-layered neighbourhoods.

Events are split into equal, contiguous, half-open windows; each window gets
its own network. A node is active in a window when its multi-layered
neighbourhood there is non-empty, and nodes are then grouped by the exact set
of windows they are active in ("W1", "W245", "W12345", ...).
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from errors import IngestionError, MsnValidationError
from network import EdgeEvent, MultiLayerNetwork, build_network, require_alpha
from neighbourhoods import Variant, neighbourhood_sizes
from util.parallel import parallel_map

logger = logging.getLogger(__name__)

DAY = 86400.0
LABELLED_COMBINATION_LIMIT = 10


@dataclass(frozen=True)
class WindowPartition:
    windows: Tuple[Tuple[float, float], ...]
    networks: Tuple[MultiLayerNetwork, ...]
    dropped_events: int
    event_counts: Tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.windows)


@dataclass(frozen=True)
class ActivityProfile:
    """Bit i of a node's mask is set when the node is active in window i."""

    window_count: int
    alpha: int
    variant: Variant
    masks: Dict[str, int]


@dataclass(frozen=True)
class CombinationCounts:
    counts: Dict[str, int]
    no_active: int

    @property
    def total(self) -> int:
        return sum(self.counts.values()) + self.no_active


@dataclass(frozen=True)
class CombinationTable:
    """Window-combination label by alpha, in the grouping order of a report."""

    alphas: Tuple[int, ...]
    no_active: Tuple[int, ...]
    rows: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)


def partition_windows(
    events: Sequence[EdgeEvent],
    start: float,
    window_length: float,
    count: int,
    dedup_policy="sum",
) -> WindowPartition:
    """
    Window i covers [start + i * window_length, start + (i + 1) * window_length).
    Events outside every window are dropped and counted.
    """
    if isinstance(count, bool) or not isinstance(count, int) or count < 1:
        raise MsnValidationError(f"window count must be an integer >= 1, got {count!r}")
    if not window_length > 0:
        raise MsnValidationError(f"window length must be positive, got {window_length!r}")

    missing = [i for i, event in enumerate(events) if event.timestamp is None]
    if missing:
        shown = ", ".join(str(i + 1) for i in missing[:10])
        raise IngestionError(f"{len(missing)} events have no timestamp (events {shown})", offenders=missing)

    # one boundary array for both bucketing and the reported windows
    bounds = start + np.arange(count + 1) * window_length
    stamps = np.fromiter((event.timestamp for event in events), dtype=float, count=len(events))
    positions = np.searchsorted(bounds, stamps, side="right") - 1

    buckets: List[List[EdgeEvent]] = [[] for _ in range(count)]
    dropped = 0
    for event, position in zip(events, positions.tolist()):
        if 0 <= position < count:
            buckets[position].append(event)
        else:
            dropped += 1

    if dropped:
        logger.warning("Dropped %d events outside [%s, %s)", dropped, bounds[0], bounds[-1])

    windows = tuple((float(bounds[i]), float(bounds[i + 1])) for i in range(count))
    networks = tuple(build_network(bucket, dedup_policy) for bucket in buckets)
    event_counts = tuple(len(bucket) for bucket in buckets)
    logger.info("Partitioned %d events into %d windows, %d dropped", len(events), count, dropped)
    return WindowPartition(windows, networks, dropped, event_counts)


def _active_nodes(net: MultiLayerNetwork, alpha: int, variant) -> List[str]:
    sizes = neighbourhood_sizes(net, alpha, variant)
    return [node for node, size in zip(net.nodes, sizes) if size > 0]


def activity_profile(part: WindowPartition, alpha: int, variant=Variant.ANY, workers: Optional[int] = None) -> ActivityProfile:
    alpha = require_alpha(alpha)
    variant = Variant(variant)
    active_per_window = parallel_map(lambda net: _active_nodes(net, alpha, variant), part.networks, workers)

    masks: Dict[str, int] = {}
    for net in part.networks:
        for node in net.nodes:
            masks.setdefault(node, 0)
    for i, active in enumerate(active_per_window):
        for node in active:
            masks[node] |= 1 << i

    return ActivityProfile(part.count, alpha, variant, dict(sorted(masks.items())))


def combination_label(mask: int, window_count: int) -> str:
    numbers = [str(i + 1) for i in range(window_count) if mask >> i & 1]
    separator = "" if window_count <= 9 else "-"
    return "W" + separator.join(numbers)


def combination_counts(profile: ActivityProfile, roster: Iterable[str] = ()) -> CombinationCounts:
    """
    Count nodes per exact active-window set. The node universe is every node
    seen in any window plus `roster`; nodes active nowhere are `no_active`.
    """
    universe = set(profile.masks) | set(roster)
    counts: Dict[str, int] = {}
    no_active = 0
    for node in universe:
        mask = profile.masks.get(node, 0)
        if mask == 0:
            no_active += 1
            continue
        label = combination_label(mask, profile.window_count)
        counts[label] = counts.get(label, 0) + 1

    ordered = sorted(counts.items(), key=lambda item: _label_order(item[0], profile.window_count))
    return CombinationCounts(dict(ordered), no_active)


def _label_order(label: str, window_count: int):
    windows = label[1:].split("-") if window_count > 9 else list(label[1:])
    numbers = tuple(int(n) for n in windows)
    return -len(numbers), numbers


def _all_labels(window_count: int) -> List[str]:
    labels = []
    for size in range(window_count, 0, -1):
        for combo in itertools.combinations(range(window_count), size):
            labels.append(combination_label(sum(1 << i for i in combo), window_count))
    return labels


def combination_table(part: WindowPartition, alphas: Sequence[int], variant=Variant.ANY,
                      roster: Iterable[str] = (), workers: Optional[int] = None) -> CombinationTable:
    """
    One column of combination counts per alpha. With up to
    LABELLED_COMBINATION_LIMIT windows every combination gets a row, zero or
    not; beyond that only combinations that occur are listed.
    """
    alphas = tuple(require_alpha(alpha) for alpha in alphas)
    roster = list(roster)
    seen_nodes = {node for net in part.networks for node in net.nodes}
    unseen = sorted(set(roster) - seen_nodes)
    if unseen:
        logger.warning(
            "%d roster nodes appear in no window and count as no_active (e.g. %s)",
            len(unseen), ", ".join(unseen[:5]),
        )
    columns = [combination_counts(activity_profile(part, alpha, variant, workers), roster) for alpha in alphas]

    if part.count <= LABELLED_COMBINATION_LIMIT:
        labels = _all_labels(part.count)
    else:
        seen = {label for column in columns for label in column.counts}
        labels = sorted(seen, key=lambda label: _label_order(label, part.count))

    rows = [(label, tuple(column.counts.get(label, 0) for column in columns)) for label in labels]
    return CombinationTable(alphas, tuple(column.no_active for column in columns), rows)


def window_activity_counts(profile: ActivityProfile) -> List[int]:
    """Number of active nodes in each window."""
    return [sum(1 for mask in profile.masks.values() if mask >> i & 1) for i in range(profile.window_count)]
