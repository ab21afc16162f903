"""Global and beta-smooth sensitivity of a node's below-threshold triangle count.

The smooth computation reformulates sensitivity-at-distance as shifting the
per-triangle partial sums c_j onto a moving integer target t at l1 cost,
discounted by e^{-beta |z|}.  For the biased estimator only counts on the
target matter (two order-statistic trees track distances as the target
sweeps); for the unbiased estimator the values adjacent to the target
contribute differently from the values on it, handled through the
double-target and single-target distance indexes.

``smooth_sensitivity_bruteforce`` is an independent oracle: it scans every
integer target in an exact pruning radius and exhausts all shift counts
instead of using the selection rules, so fast-path and oracle share no
algorithmic machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .assignment import Assignment, InstanceTooLargeError
from .estimators import EstimatorKind, estimator_step_bound, unbiased_correction
from .graph import Triangle, WeightedGraph, canonical_edge
from .ostree import OrderStatTree
from .target_index import DoubleTargetIndex, SingleTargetIndex

Edge = tuple[int, int]


# -- global sensitivity ------------------------------------------------------


def global_sensitivity(
    node: int,
    assignment: Assignment,
    graph: WeightedGraph,
    kind: EstimatorKind,
    p: float | None = None,
) -> float:
    """Worst-case change of the local count when one incident weight moves by 1.

    Equals the estimator step bound times the largest number of assigned
    triangles sharing a single incident edge; computable from public data
    in O(d_v^2).
    """
    if kind is EstimatorKind.UNBIASED and p is None:
        raise ValueError("the unbiased estimator needs p = e^{-epsilon_1}")
    counts: dict[int, int] = {}
    for t in assignment.triangles_of(node):
        for u in t.nodes:
            if u != node:
                counts[u] = counts.get(u, 0) + 1
    if not counts:
        return 0.0
    return estimator_step_bound(kind, 0.0 if p is None else p) * max(counts.values())


# -- per-node local view ------------------------------------------------------


@dataclass(frozen=True)
class EdgeLocalView:
    """One incident edge of the responsible node: its true weight and the
    partial sums c_j (other incident weight + noisy non-incident weight)
    of every assigned triangle containing it."""

    weight: int
    partial_sums: tuple[int, ...]


@dataclass(frozen=True)
class SmoothSensInstance:
    node: int
    lam: int
    beta: float
    kind: EstimatorKind
    p: float | None
    edges: tuple[EdgeLocalView, ...]

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.kind is EstimatorKind.UNBIASED and not (
            self.p is not None and 0.0 <= self.p < 1.0
        ):
            raise ValueError("the unbiased estimator needs p in [0,1)")


def instance_from_parts(
    node: int,
    incident_weights: Mapping[Edge, int],
    assigned: Sequence[Triangle],
    noisy_edge_weights: Mapping[Edge, int],
    lam: int,
    beta: float,
    kind: EstimatorKind,
    p: float | None = None,
) -> SmoothSensInstance:
    """Build the instance from exactly the data a node holds in step 2."""
    sums: dict[int, list[int]] = {}
    for t in assigned:
        y, z = (u for u in t.nodes if u != node)
        w_prime = noisy_edge_weights[canonical_edge(y, z)]
        sums.setdefault(y, []).append(incident_weights[canonical_edge(node, z)] + w_prime)
        sums.setdefault(z, []).append(incident_weights[canonical_edge(node, y)] + w_prime)
    views = tuple(
        EdgeLocalView(incident_weights[canonical_edge(node, u)], tuple(c))
        for u, c in sorted(sums.items())
    )
    return SmoothSensInstance(node, lam, beta, kind, p, views)


def build_instance(
    graph: WeightedGraph,
    assignment: Assignment,
    noisy_edge_weights: Mapping[Edge, int],
    node: int,
    lam: int,
    beta: float,
    kind: EstimatorKind,
    p: float | None = None,
) -> SmoothSensInstance:
    incident = {
        canonical_edge(node, u): graph.weight(node, u) for u in graph.neighbors(node)
    }
    return instance_from_parts(
        node, incident, assignment.triangles_of(node), noisy_edge_weights, lam, beta, kind, p
    )


def _anchor_targets(view: EdgeLocalView, lam: int) -> tuple[int, int]:
    # Initial target for a +1 step on this edge, and for a -1 step.
    return lam - 1 - view.weight, lam - view.weight


def local_sensitivity(inst: SmoothSensInstance) -> float:
    """Sensitivity at the instance itself (the z = 0 term of the smooth max)."""
    best = 0.0
    x = unbiased_correction(inst.p) if inst.kind is EstimatorKind.UNBIASED else 0.0
    for view in inst.edges:
        c = view.partial_sums
        for theta in _anchor_targets(view, inst.lam):
            on = sum(1 for v in c if v == theta)
            if inst.kind is EstimatorKind.BIASED:
                best = max(best, float(on))
            else:
                adjacent = sum(1 for v in c if abs(v - theta) == 1)
                best = max(best, abs(x * adjacent - (1.0 + 2.0 * x) * on))
    return best


# -- joint order statistics over two distance trees ---------------------------


def joint_kth_distance(left: OrderStatTree, right: OrderStatTree, k: int) -> tuple[int, int]:
    """k-th smallest distance over two distance trees, with a minimizing split.

    Returns (distance, l) where l distances come from ``left`` and k - l
    from ``right``; d(k) = min_l max(left.select(l), right.select(k-l)) with
    the select(0) = 0 sentinel resolving the boundary splits.  Binary search
    over l, O(log^2) tree operations total.
    """
    if not (1 <= k <= left.size + right.size):
        raise IndexError(f"k = {k} out of range for {left.size}+{right.size} distances")
    lo = max(0, k - right.size)
    hi = min(k, left.size)
    a, b = lo, hi
    while a < b:
        mid = (a + b) // 2
        if left.select(mid) >= right.select(k - mid):
            b = mid
        else:
            a = mid + 1
    best: tuple[int, int] | None = None
    for l in (a - 1, a):
        if lo <= l <= hi:
            cand = max(left.select(l), right.select(k - l))
            if best is None or cand < best[0]:
                best = (cand, l)
    assert best is not None
    return best


# -- smooth sensitivity, biased estimator -------------------------------------


def _anchor_discount(t: int, thetas: tuple[int, int], beta: float) -> float:
    # e^{-beta |z_i|} for the better of the two step signs at this target
    return math.exp(-beta * min(abs(t - thetas[0]), abs(t - thetas[1])))


def _biased_edge_best(c_sorted: list[int], thetas: tuple[int, int], beta: float) -> float:
    # Sweep targets in nondecreasing order.  left holds values <= t, right
    # the rest; both are order-stat trees so counts and the merged distance
    # stream around the target cost O(log) per step.  The best shift count
    # at a target is anchor-independent, so one sweep serves both step signs.
    targets = sorted(set(c_sorted).union(thetas))
    left = OrderStatTree()
    right = OrderStatTree(c_sorted)
    best = 0.0
    for t in targets:
        while right.size and right.min() <= t:
            v = right.min()
            right.remove(v)
            left.insert(v)
        s_left = left.size
        s_right = right.size
        on_target = left.count(t)
        discount = _anchor_discount(t, thetas, beta)
        k = on_target
        cost = 0
        if k:
            best = max(best, k * discount)
        below = s_left - on_target
        i_left = i_right = 1
        while i_left <= below or i_right <= s_right:
            d_l = t - left.select(below - i_left + 1) if i_left <= below else None
            d_r = right.select(i_right) - t if i_right <= s_right else None
            if d_r is None or (d_l is not None and d_l <= d_r):
                d = d_l
                i_left += 1
            else:
                d = d_r
                i_right += 1
            # selection rule: growing k to k+1 helps iff k/(k+1) < e^{-beta d};
            # the ratio is increasing and d nondecreasing, so stop at first failure.
            if k and not (k / (k + 1) < math.exp(-beta * d)):
                break
            k += 1
            cost += d
            best = max(best, k * math.exp(-beta * cost) * discount)
    return best


def smooth_sensitivity_biased(inst: SmoothSensInstance) -> float:
    """beta-smooth sensitivity of the biased local count, O(d^2 polylog d)."""
    if inst.kind is not EstimatorKind.BIASED:
        raise ValueError("instance is not for the biased estimator")
    best = 0.0
    for view in inst.edges:
        if not view.partial_sums:
            continue
        c = sorted(view.partial_sums)
        best = max(best, _biased_edge_best(c, _anchor_targets(view, inst.lam), inst.beta))
    return best


# -- smooth sensitivity, unbiased estimator ------------------------------------


def _extend_over_outer(idx, near: int, base: int, gain: float, beta: float) -> float:
    # Shift outer values toward the target while the count-ratio rule keeps
    # improving; kth_distance/sum_k_distances already fold in the unit-cost
    # shifts of the near set, so the exponent comes straight off the index.
    outer = idx.size - near
    if outer <= 0:
        return 0.0
    # the first step already fails if even the closest conceivable outer
    # value cannot satisfy the count-ratio rule, so skip the index probes
    if base > 0 and base / (base + 1) >= math.exp(-beta * idx.min_outer_distance):
        return 0.0
    best = 0.0
    k = 0
    while k < outer:
        d = idx.kth_distance(near + k + 1)
        if not ((base + k) / (base + k + 1) < math.exp(-beta * d)):
            break
        k += 1
        total = idx.sum_k_distances(near + k)
        best = max(best, gain * (base + k) * math.exp(-beta * total))
    return best


def _unbiased_edge_best(
    pos_idx: DoubleTargetIndex,
    neg_idx: SingleTargetIndex,
    targets: Sequence[int],
    thetas: tuple[int, int],
    x: float,
    beta: float,
) -> float:
    big = 1.0 + 2.0 * x
    slope = 1.0 + 3.0 * x
    inv_beta = 1.0 / beta
    exp = math.exp
    best = 0.0
    for t in targets:
        discount = _anchor_discount(t, thetas, beta)
        pos_idx.update_target(t)
        neg_idx.adopt_regions(pos_idx)  # same array, same boundaries
        adjacent = pos_idx.on_low + pos_idx.on_high
        on_target = pos_idx.on_target
        near = adjacent + on_target
        cand = 0.0
        # positive contribution: adjacent values give +x, on-target -1-2x
        a0 = adjacent * x - on_target * big
        stat = inv_beta - a0 / slope
        for k in (0, on_target, min(max(math.floor(stat), 0), on_target),
                  min(max(math.ceil(stat), 0), on_target)):
            v = (a0 + slope * k) * exp(-beta * k)
            if v > cand:
                cand = v
        v = _extend_over_outer(pos_idx, near, near, x, beta)
        if v > cand:
            cand = v
        # negative contribution: on-target values give +1+2x, adjacent -x
        a1 = big * on_target - x * adjacent
        stat = inv_beta - a1 / slope
        for k in (0, adjacent, min(max(math.floor(stat), 0), adjacent),
                  min(max(math.ceil(stat), 0), adjacent)):
            v = (a1 + slope * k) * exp(-beta * k)
            if v > cand:
                cand = v
        v = _extend_over_outer(neg_idx, near, near, big, beta)
        if v > cand:
            cand = v
        v = cand * discount
        if v > best:
            best = v
    return best


def smooth_sensitivity_unbiased(inst: SmoothSensInstance) -> float:
    """beta-smooth sensitivity of the unbiased local count, O(d^2 log^2 d).

    Both step signs reduce to the same two target-sweep problems (positive
    and negative sum contribution) with the initial target shifted by one;
    the best shift counts at a target are anchor-independent, so each edge
    runs one sweep over the candidate targets {c_j - 1, c_j, c_j + 1} plus
    the two initial targets, scoring both anchors per target.
    """
    if inst.kind is not EstimatorKind.UNBIASED:
        raise ValueError("instance is not for the unbiased estimator")
    x = unbiased_correction(inst.p)
    best = 0.0
    for view in inst.edges:
        if not view.partial_sums:
            continue
        c = sorted(view.partial_sums)
        thetas = _anchor_targets(view, inst.lam)
        targets = sorted({v + d for v in c for d in (-1, 0, 1)}.union(thetas))
        pos_idx = DoubleTargetIndex(c, c[0])
        neg_idx = SingleTargetIndex(c, c[0])
        best = max(
            best,
            _unbiased_edge_best(pos_idx, neg_idx, targets, thetas, x, inst.beta),
        )
    return best


def smooth_sensitivity(inst: SmoothSensInstance) -> float:
    if inst.kind is EstimatorKind.BIASED:
        return smooth_sensitivity_biased(inst)
    return smooth_sensitivity_unbiased(inst)


# -- brute-force oracle --------------------------------------------------------


def _brute_scan_range(c: list[int], theta: int, beta: float, incumbent: float, gain_cap: float, radius: int | None):
    lo = min(c[0], theta)
    hi = max(c[-1], theta)
    if radius is None:
        # Exact pruning: a target at offset r from theta is worth at most
        # gain_cap * e^{-beta r}, so nothing beyond R can beat the incumbent.
        r = (math.log(gain_cap) - math.log(incumbent)) / beta if incumbent > 0 else 0.0
        radius = max(1, int(math.ceil(r)) + 2)
    return range(lo - radius, hi + radius + 1)


def _brute_biased_value(c: list[int], t: int, theta: int, beta: float) -> float:
    dists = sorted(abs(v - t) for v in c)
    dz = abs(t - theta)
    best = 0.0
    acc = 0
    for k, d in enumerate(dists, 1):
        acc += d
        best = max(best, k * math.exp(-beta * (acc + dz)))
    return best


def _brute_biased_anchor(c: list[int], theta: int, beta: float, radius: int | None) -> float:
    incumbent = 0.0
    for t in range(min(c[0], theta) - 2, max(c[-1], theta) + 3):
        incumbent = max(incumbent, _brute_biased_value(c, t, theta, beta))
    best = incumbent
    for t in _brute_scan_range(c, theta, beta, incumbent, float(len(c)), radius):
        best = max(best, _brute_biased_value(c, t, theta, beta))
    return best


def _brute_unbiased_value(c: list[int], t: int, theta: int, x: float, beta: float) -> float:
    # Full grid over (shift count from the near set, shift count from the
    # outer set); no stationary points, no selection rules.
    big = 1.0 + 2.0 * x
    dz = abs(t - theta)
    on = sum(1 for v in c if v == t)
    adj = sum(1 for v in c if abs(v - t) == 1)
    pair_d = sorted(min(abs(v - (t - 1)), abs(v - (t + 1))) for v in c if abs(v - t) > 1)
    center_d = sorted(abs(v - t) for v in c if abs(v - t) > 1)
    best = 0.0
    # positive contribution: adjacent stay at +x, shifted on-target values
    # turn -1-2x into +x at cost 1, outer values join at their pair distance
    pair_pref = [0]
    for d in pair_d:
        pair_pref.append(pair_pref[-1] + d)
    for k_on in range(on + 1):
        for k_out in range(len(pair_d) + 1):
            gain = (adj + k_on + k_out) * x - (on - k_on) * big
            cost = k_on + pair_pref[k_out] + dz
            best = max(best, gain * math.exp(-beta * cost))
    # negative contribution: on-target values stay at +1+2x, shifted adjacent
    # values turn -x into +1+2x at cost 1, outer values come to the target
    center_pref = [0]
    for d in center_d:
        center_pref.append(center_pref[-1] + d)
    for k_adj in range(adj + 1):
        for k_out in range(len(center_d) + 1):
            gain = big * (on + k_adj + k_out) - x * (adj - k_adj)
            cost = k_adj + center_pref[k_out] + dz
            best = max(best, gain * math.exp(-beta * cost))
    return best


def _brute_unbiased_anchor(
    c: list[int], theta: int, x: float, beta: float, radius: int | None
) -> float:
    incumbent = 0.0
    for t in range(min(c[0], theta) - 2, max(c[-1], theta) + 3):
        incumbent = max(incumbent, _brute_unbiased_value(c, t, theta, x, beta))
    best = incumbent
    cap = len(c) * (1.0 + 2.0 * x)
    for t in _brute_scan_range(c, theta, beta, incumbent, cap, radius):
        best = max(best, _brute_unbiased_value(c, t, theta, x, beta))
    return best


def smooth_sensitivity_bruteforce(inst: SmoothSensInstance, radius: int | None = None) -> float:
    """Exact smooth sensitivity on small instances by exhaustive target scan.

    Independent of the fast algorithms: every integer target within an
    exact pruning radius is evaluated, and all shift-count combinations are
    enumerated outright.  ``radius`` overrides the automatic pruning radius
    (callers must then guarantee the residual beyond it is negligible).
    """
    if len(inst.edges) > 12 or any(len(v.partial_sums) > 12 for v in inst.edges):
        raise InstanceTooLargeError("brute-force oracle is capped at degree 12")
    x = unbiased_correction(inst.p) if inst.kind is EstimatorKind.UNBIASED else 0.0
    best = 0.0
    for view in inst.edges:
        if not view.partial_sums:
            continue
        c = sorted(view.partial_sums)
        for theta in _anchor_targets(view, inst.lam):
            if inst.kind is EstimatorKind.BIASED:
                best = max(best, _brute_biased_anchor(c, theta, inst.beta, radius))
            else:
                best = max(best, _brute_unbiased_anchor(c, theta, x, inst.beta, radius))
    return best
