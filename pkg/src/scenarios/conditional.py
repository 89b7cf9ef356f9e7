"""
Simplex-mode families built from conditional probabilities: partial
conditional bandits (with the desk instance and their per-prefix
components), zero-sum games, the rotating line in the triangle and the
isometries of the square.
"""

from __future__ import annotations

import itertools

import numpy as np

from src.certificates import qualifying_pairs
from src.geometry import SimplexOfLabels
from src.logger.logging_config import get_logger
from src.model import HypothesisFamily, OutcomeSpace, RewardSpec
from src.scenarios.point_valued import point_valued_scenario
from src.scenarios.scenario import Scenario

logger = get_logger(__name__)


def _extends(b: tuple, prefix: tuple) -> bool:
    return b[: len(prefix)] == prefix


def outcome_labels(set_sizes) -> list[tuple[int, ...]]:
    """The outcome sequences in lexicographic order."""
    return list(itertools.product(*[range(int(s)) for s in set_sizes]))


def pcb_scenario(
    name: str,
    set_sizes,
    prefixes,
    f_tensors,
    psis,
    arms,
    hypotheses,
    rewards,
    meta: dict | None = None,
) -> Scenario:
    """
    A partial conditional bandit on the simplex over sequences.

    For every stochastic prefix a the probability of the next element c
    given a is f_a(x, theta_a)_c. Constraint rows are indexed by (a, c)
    with the last c of each prefix dropped:
    F_ac = psi_a(z_a) sum_e y_{ace} - f_a(x, z_a)_c sum_g y_{ag}.

    Parameters:
        name (str): Scenario name.
        set_sizes (list[int]): |G_i| for each position of the sequence.
        prefixes (list[tuple]): The prefixes with fixed conditionals.
        f_tensors (list[array_like]): Per prefix, shape (n_arms, |G_|a||, dim Z_a).
        psis (list[array_like]): Per prefix, the covector psi_a on Z_a.
        arms (array_like): Arm features.
        hypotheses (array_like): Rows concatenating theta_a over prefixes.
        rewards (array_like): Reward per outcome sequence, shared or per arm.
        meta (dict | None): Extra metadata.

    Returns:
        Scenario: The scenario, carrying a chain structure hint.

    Raises:
        ValueError: If some hypothesis has psi_a(theta_a) != 1 or a negative
            conditional probability.
    """
    sizes = [int(s) for s in set_sizes]
    prefixes = [tuple(int(v) for v in a) for a in prefixes]
    arms = np.atleast_2d(np.asarray(arms, dtype=float))
    n_arms = arms.shape[0]
    labels = outcome_labels(sizes)
    f_list = [np.asarray(f, dtype=float).reshape(n_arms, sizes[len(a)], -1) for a, f in zip(prefixes, f_tensors)]
    psi_list = [np.asarray(p, dtype=float).reshape(-1) for p in psis]
    offsets = np.concatenate([[0], np.cumsum([p.shape[0] for p in psi_list])]).astype(int)
    dim_z = int(offsets[-1])
    hyps = np.atleast_2d(np.asarray(hypotheses, dtype=float)).reshape(-1, dim_z)

    tol = 1e-9
    for k, (a, f, psi) in enumerate(zip(prefixes, f_list, psi_list)):
        block = hyps[:, offsets[k] : offsets[k + 1]]
        if np.max(np.abs(block @ psi - 1.0)) > tol:
            raise ValueError(f"prefix {a}: hypotheses must satisfy psi(theta_a) = 1")
        if np.min(np.einsum("xci,hi->xhc", f, block)) < -tol:
            raise ValueError(f"prefix {a}: some conditional probability is negative")

    rows = []
    components = []
    for k, (a, f, psi) in enumerate(zip(prefixes, f_list, psi_list)):
        width = sizes[len(a)]
        in_prefix = np.array([_extends(b, a) for b in labels], dtype=float)
        component_rows = []
        for c in range(width - 1):
            in_next = np.array([_extends(b, a + (c,)) for b in labels], dtype=float)
            t = np.zeros((n_arms, dim_z, len(labels)))
            t[:, offsets[k] : offsets[k + 1], :] = (
                psi[None, :, None] * in_next[None, None, :]
                - f[:, c, :, None] * in_prefix[None, None, :]
            )
            component_rows.append(len(rows))
            rows.append(t)
        lift = [
            [j for j, b in enumerate(labels) if _extends(b, a + (c,))] for c in range(width)
        ]
        components.append({"prefix": list(a), "rows": component_rows, "lift": lift})

    tensors = np.stack(rows, axis=1)
    family = HypothesisFamily(arms, hyps, tensors, {"method": "chain", "components": components})
    body = SimplexOfLabels(["-".join(str(v) for v in b) for b in labels])
    r = np.asarray(rewards, dtype=float)
    reward = RewardSpec(r, np.zeros(n_arms)) if r.ndim == 2 else RewardSpec.shared(r, 0.0, n_arms)
    meta = dict(meta or {})
    meta["pcb"] = {
        "set_sizes": sizes,
        "prefixes": [list(a) for a in prefixes],
        "psis": [p.tolist() for p in psi_list],
        "z_offsets": offsets.tolist(),
    }
    logger.info(f"Built pcb scenario {name!r}: |B|={len(labels)}, D_W={tensors.shape[1]}, D_Z={dim_z}")
    return Scenario(name, OutcomeSpace(body), family, reward, meta)


def component_f(scenario: Scenario, k: int) -> np.ndarray:
    """
    Recover f_a for the k-th stochastic prefix from the constraint tensors,
    shape (n_arms, |G_|a||, dim Z_a).
    """
    pcb = scenario.meta["pcb"]
    a = tuple(pcb["prefixes"][k])
    width = pcb["set_sizes"][len(a)]
    lo, hi = pcb["z_offsets"][k], pcb["z_offsets"][k + 1]
    psi = np.asarray(pcb["psis"][k], dtype=float)
    labels = outcome_labels(pcb["set_sizes"])
    component = scenario.family.sine_hint["components"][k]
    tensors = scenario.family.tensors
    f = np.zeros((scenario.n_arms, width, hi - lo))
    for c, row in enumerate(component["rows"]):
        # a label extending a but not a + (c,) carries -f_c
        other = next(j for j, b in enumerate(labels) if _extends(b, a) and not _extends(b, a + (c,)))
        f[:, c, :] = -tensors[:, row, lo:hi, other]
    f[:, width - 1, :] = psi[None, :] - f[:, : width - 1, :].sum(axis=1)
    return f


def pcb_component_scenarios(scenario: Scenario) -> list[Scenario]:
    """
    One point-valued scenario per stochastic prefix: outcomes in the simplex
    of the next element, hypotheses the distinct theta_a of the grid.
    """
    pcb = scenario.meta["pcb"]
    components = []
    for k, a in enumerate(pcb["prefixes"]):
        lo, hi = pcb["z_offsets"][k], pcb["z_offsets"][k + 1]
        width = pcb["set_sizes"][len(a)]
        hyps = np.unique(scenario.family.hypotheses[:, lo:hi], axis=0)
        components.append(
            point_valued_scenario(
                f"{scenario.name}[{'-'.join(str(v) for v in a) or 'root'}]",
                SimplexOfLabels([str(c) for c in range(width)]),
                scenario.family.arms,
                hyps,
                component_f(scenario, k),
                pcb["psis"][k],
                RewardSpec.shared(np.zeros(width), 0.0, scenario.n_arms),
                {"prefix": list(a)},
            )
        )
    return components


def _mixing_f(levels: np.ndarray) -> np.ndarray:
    """f(x, z) = (x z0 + (1 - x) z1, (1 - x) z0 + x z1) for each level x."""
    f = np.zeros((levels.shape[0], 2, 2))
    f[:, 0, 0], f[:, 0, 1] = levels, 1.0 - levels
    f[:, 1, 0], f[:, 1, 1] = 1.0 - levels, levels
    return f


def pcb_desk(arm_res: int = 3, h_res: int = 3) -> Scenario:
    """
    Two binary positions; the first element and the second after a 0 have
    arm-dependent conditionals, the second after a 1 is free.

    Arm x in [0, 1] mixes theta_a = (p, 1 - p) into P(next = 0) =
    x p + (1 - x)(1 - p). Rewards are +1 for 0-0, -1 for 1-1 and 0 otherwise.
    """
    levels = np.linspace(0.0, 1.0, arm_res)
    ps = np.linspace(0.2, 0.8, h_res)
    hyps = [[p, 1.0 - p, q, 1.0 - q] for p, q in itertools.product(ps, ps)]
    f = _mixing_f(levels)
    meta = {
        "grid": {"arm_res": arm_res, "h_res": h_res},
        "known_values": [
            {"quantity": "S", "value": 1.0, "provenance": "closed form: chain of conditionals gives S = 1"},
            {"quantity": "R", "value": 8.0, "provenance": "closed form: R <= 4n", "relation": "le"},
            {"quantity": "dim_w", "value": 2, "provenance": "derived: construction"},
            {"quantity": "dim_z", "value": 4, "provenance": "derived: construction"},
        ],
    }
    return pcb_scenario(
        "pcb_desk", [2, 2], [(), (0,)], [f, f], [[1.0, 1.0], [1.0, 1.0]],
        levels.reshape(-1, 1), hyps, [1.0, 0.0, 0.0, -1.0], meta,
    )


def simplex_grid(n: int, resolution: int) -> np.ndarray:
    """Mixed strategies over n actions with coordinates in multiples of 1/resolution."""
    points = [
        np.array(combo, dtype=float) / resolution
        for combo in itertools.product(range(resolution + 1), repeat=n)
        if sum(combo) == resolution
    ]
    return np.array(points)


def zerosum_theta(payoff) -> np.ndarray:
    """Hypothesis vector of a payoff matrix P (actions x responses)."""
    p = np.asarray(payoff, dtype=float)
    n1, n2 = p.shape
    blocks = [np.ones(n2)]
    for b in range(n2):
        for a in range(n1):
            blocks.append([(1.0 - p[a, b]) / 2.0, (1.0 + p[a, b]) / 2.0])
    return np.concatenate([np.ravel(v) for v in blocks])


def payoff_of(scenario: Scenario, theta) -> np.ndarray:
    """The payoff matrix encoded by a zero-sum hypothesis."""
    game = scenario.meta["game"]
    n1, n2 = int(game["n_actions"]), int(game["n_responses"])
    vec = scenario.family.theta(theta)
    payoff = np.zeros((n1, n2))
    for b in range(n2):
        for a in range(n1):
            k = n2 + 2 * (b * n1 + a)
            payoff[a, b] = vec[k + 1] - vec[k]
    return payoff


def zerosum_scenario(payoffs, x_grid: int = 4) -> Scenario:
    """
    Zero-sum game with bandit feedback: the opponent answers the mixed
    strategy x with b, the pure action a ~ x is drawn and the payoff sign
    s in {-1, +1} has mean P[a, b]. Outcome labels are (b, a, s).

    Parameters:
        payoffs (list[array_like]): Candidate payoff matrices in [-1, 1],
            each of shape (n_actions, n_responses).
        x_grid (int): Resolution of the mixed-strategy grid; it always
            contains the pure strategies.
    """
    ps = [np.asarray(p, dtype=float) for p in payoffs]
    n1, n2 = ps[0].shape
    if any(p.shape != (n1, n2) for p in ps):
        raise ValueError("payoff matrices must share one shape")
    if any(np.max(np.abs(p)) > 1.0 for p in ps):
        raise ValueError("payoffs must lie in [-1, 1]")
    arms = simplex_grid(n1, x_grid)
    n_arms = arms.shape[0]
    pure = [int(np.flatnonzero(np.all(np.isclose(arms, np.eye(n1)[a]), axis=1))[0]) for a in range(n1)]

    prefixes = [(b,) for b in range(n2)] + [(b, a) for b in range(n2) for a in range(n1)]
    f_b = arms[:, :, None]
    f_ba = np.broadcast_to(np.eye(2), (n_arms, 2, 2))
    f_tensors = [f_b] * n2 + [f_ba] * (n1 * n2)
    psis = [[1.0]] * n2 + [[1.0, 1.0]] * (n1 * n2)
    rewards = [1.0 if s == 1 else -1.0 for _, _, s in outcome_labels([n2, n1, 2])]
    known = [
        {"quantity": "C", "value": 2.0, "provenance": "closed form: C <= 2", "relation": "le"},
        {"quantity": "dim_z", "value": n2 + 2 * n1 * n2, "provenance": "closed form: D_Z = |B2| + 2|B1||B2|"},
    ]
    if n1 == 2:
        known.append({"quantity": "S", "value": 1.0, "provenance": "closed form: S = 1 for conditional chains"})
    meta = {
        "grid": {"x_grid": x_grid},
        "game": {"n_actions": n1, "n_responses": n2, "pure_arms": pure},
        "payoffs": [p.tolist() for p in ps],
        "known_values": known,
    }
    return pcb_scenario(
        "zerosum", [n2, n1, 2], prefixes, f_tensors, psis, arms,
        [zerosum_theta(p) for p in ps], rewards, meta,
    )


def zerosum_gap_bound(scenario: Scenario, table: np.ndarray | None = None) -> float:
    """
    Lower bound on the gap from payoff differences: the least, over
    qualifying pairs (P, P') with optimal arm x of P', of
    (1/2) min_b sum_a x_a |P_ab - P'_ab|. +inf when no pair qualifies.
    """
    table = scenario.table if table is None else table
    value = float("inf")
    for h, h2, arm in qualifying_pairs(table):
        diff = np.abs(payoff_of(scenario, h) - payoff_of(scenario, h2))
        value = min(value, 0.5 * float(np.min(scenario.family.arms[arm] @ diff)))
    return value


def rot_triangle(arm_res: int = 12, h_res: int = 6) -> Scenario:
    """
    Credal sets are lines through the centre of the triangle at angle x + theta,
    F = (cos(x + theta) u + sin(x + theta) v) . y with u, v orthonormal to
    (1, 1, 1). Hypotheses are stored as (cos theta, sin theta); the reward
    is the probability of outcome 2.
    """
    u = np.array([1.0, -1.0, 0.0]) / np.sqrt(2.0)
    v = np.array([1.0, 1.0, -2.0]) / np.sqrt(6.0)
    xs = 2 * np.pi * np.arange(arm_res) / arm_res
    ts = 2 * np.pi * np.arange(h_res) / h_res
    tensors = np.zeros((arm_res, 1, 2, 3))
    tensors[:, 0, 0, :] = np.cos(xs)[:, None] * u + np.sin(xs)[:, None] * v
    tensors[:, 0, 1, :] = -np.sin(xs)[:, None] * u + np.cos(xs)[:, None] * v
    family = HypothesisFamily(xs.reshape(-1, 1), np.column_stack([np.cos(ts), np.sin(ts)]), tensors)
    reward = RewardSpec.shared([0.0, 0.0, 1.0], 0.0, arm_res)
    exact = arm_res % 4 == 0 and arm_res % h_res == 0
    known = [{"quantity": "dim_w", "value": 1, "provenance": "one line"}]
    known.append({
        "quantity": "optimal_value[0]", "value": 1.0 / 3.0,
        "provenance": "closed form: line parallel to side 01", "relation": "eq" if exact else "le",
    })
    meta = {"grid": {"arm_res": arm_res, "h_res": h_res}, "known_values": known}
    logger.info(f"Built rot_triangle with {arm_res} arms and {h_res} hypotheses")
    return Scenario("rot_triangle", OutcomeSpace(SimplexOfLabels(["0", "1", "2"])), family, reward, meta)


def square_isometry_maps() -> np.ndarray:
    """The 8 symmetries of [0, 1]^2 as affine maps [R | t], shape (8, 2, 3)."""
    rotations = [np.array([[1, 0], [0, 1]]), np.array([[0, -1], [1, 0]]),
                 np.array([[-1, 0], [0, -1]]), np.array([[0, 1], [-1, 0]])]
    flip = np.array([[1, 0], [0, -1]])
    centre = np.array([0.5, 0.5])
    maps = []
    for r in rotations + [rot @ flip for rot in rotations]:
        maps.append(np.column_stack([r, centre - r @ centre]))
    return np.array(maps, dtype=float)


def square_isometries(h_res: int = 3) -> Scenario:
    """
    Arms are the symmetries of the unit square acting on theta = (p, q).
    With (p', q') the image, the credal set fixes P({0, 1}) = p'/2 and
    P(2 | {2, 3}) = q'. The reward is the probability of {0, 2}.
    """
    maps = square_isometry_maps()
    levels = np.linspace(0.0, 1.0, h_res)
    hyps = np.array([[p, q, 1.0] for p, q in itertools.product(levels, levels)])
    tensors = np.zeros((8, 2, 3, 4))
    tensors[:, 0, 2, 0:2] = 1.0
    tensors[:, 0, :, :] -= 0.5 * maps[:, 0, :, None]
    tensors[:, 1, 2, 2] = 1.0
    tensors[:, 1, :, 2:4] -= maps[:, 1, :, None]
    hint = {
        "method": "chain",
        "components": [
            {"prefix": [], "rows": [0], "lift": [[0, 1], [2, 3]]},
            {"prefix": [1], "rows": [1], "lift": [[2], [3]]},
        ],
    }
    family = HypothesisFamily(maps.reshape(8, -1), hyps, tensors, hint)
    reward = RewardSpec.shared([1.0, 0.0, 1.0, 0.0], 0.0, 8)
    meta = {
        "grid": {"h_res": h_res},
        "known_values": [
            {"quantity": "n_arms", "value": 8, "provenance": "closed form: |A| = 8"},
            {"quantity": "dim_w", "value": 2, "provenance": "derived: two constraints"},
            {"quantity": "S", "value": 1.0, "provenance": "closed form: conditional constraints have sine 1"},
        ],
    }
    body = SimplexOfLabels(["0", "1", "2", "3"])
    return Scenario("square_isometries", OutcomeSpace(body), family, reward, meta)
