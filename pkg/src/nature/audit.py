"""Monte-Carlo check that a nature policy stays inside the credal sections."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model import f_matrix
from src.nature.base import NaturePolicy
from src.numkit.tolerances import get_tolerance
from src.scenarios.scenario import Scenario

logger = get_logger(__name__)

AUDIT_CONFIG = {
    "sigmas": 4.0,
}


@dataclass
class ArmAudit:
    arm: int
    samples: int
    mean: list[float]
    residual: float
    threshold: float
    passed: bool


@dataclass
class AuditReport:
    nature: str
    theta: int
    rounds: int
    reps: int
    arms: list[ArmAudit] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.arms)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def compatibility_audit(
    nature: NaturePolicy,
    scenario: Scenario,
    theta: int,
    rounds: int,
    reps: int = 1,
    seed: int = 0,
    arms: list[int] | None = None,
) -> AuditReport:
    """
    Plays each arm `rounds` times in each of `reps` fresh episodes and
    compares the empirical F_{x theta}-residual of the responses with a
    sigma-scaled confidence threshold.

    A row c of F passes when |mean(F_c y)| <= sigmas * std(F_c y) / sqrt(n) + tol_feas.

    Parameters:
        nature (NaturePolicy): Policy under audit; it is reset per rep.
        scenario (Scenario): Scenario the policy is compatible with.
        theta (int): True hypothesis.
        rounds (int): Responses per arm per rep.
        reps (int): Independent resets.
        seed (int): Base seed; rep r uses seed + r.
        arms (list[int] | None): Arms to audit; all arms by default.

    Returns:
        AuditReport: Per-arm means, residuals and thresholds.
    """
    tol = get_tolerance("tol_feas")
    sigmas = AUDIT_CONFIG["sigmas"]
    report = AuditReport(nature.name, int(theta), int(rounds), int(reps))
    targets = range(scenario.n_arms) if arms is None else arms

    with Timer("compatibility_audit", nature=nature.name, theta=theta, rounds=rounds, reps=reps):
        for x in targets:
            samples = []
            for rep in range(reps):
                nature.reset(scenario, theta, seed + rep)
                samples.extend(nature.respond(x) for _ in range(rounds))
            ys = np.asarray(samples, dtype=float)
            n = ys.shape[0]
            projected = ys @ f_matrix(scenario.family, x, theta).T
            if projected.shape[1] == 0:
                residual, threshold, ok = 0.0, tol, True
            else:
                means = projected.mean(axis=0)
                stds = projected.std(axis=0, ddof=1) if n > 1 else np.zeros_like(means)
                slack = sigmas * stds / np.sqrt(n) + tol
                residual = float(np.max(np.abs(means)))
                threshold = float(np.max(slack))
                ok = bool(np.all(np.abs(means) <= slack))
            report.arms.append(ArmAudit(int(x), n, ys.mean(axis=0).tolist(), residual, threshold, ok))
            if not ok:
                logger.warning(
                    f"{nature.name}: arm {x} fails compatibility (residual {residual:.3g} > {threshold:.3g})"
                )

    logger.info(f"Audit of {nature.name} at theta={theta}: {'passed' if report.passed else 'FAILED'}")
    return report
