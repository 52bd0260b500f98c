"""Golden-section search over the integer model size.

Two probes T1 <= T2 split [lo, hi] at the 0.382/0.618 points. Whichever side
holds the worse probe is discarded, and the surviving probe is reused, so each
round costs a single new GSplicing fit. Fits are cached by T."""
from dataclasses import replace
from typing import Dict, List

from loguru import logger

from group_splicing.design import GroupedDesign
from group_splicing.errors import SearchStallError
from group_splicing.modes import Method
from group_splicing.selector.config import SelectorConfig
from group_splicing.selector.criteria import CriterionRecord, nearest_int
from group_splicing.selector.sequential import fit_at_size
from group_splicing.splicing.state import FitReport

GOLDEN_LOW = 0.382
GOLDEN_HIGH = 0.618
STALL_ROUNDS = 2


def lower_probe(lo: int, hi: int) -> int:
    return nearest_int(GOLDEN_HIGH * lo + GOLDEN_LOW * hi)


def upper_probe(lo: int, hi: int) -> int:
    return nearest_int(GOLDEN_LOW * lo + GOLDEN_HIGH * hi)


class GoldenSectionSearch:
    def __init__(self, design: GroupedDesign, config: SelectorConfig):
        self.design = design
        self.config = config.resolve(design)
        self.cache: Dict[int, FitReport] = {}
        self.lo = self.config.t_min
        self.hi = self.config.t_max
        self.terminal_size = None

    @property
    def num_fits(self) -> int:
        return len(self.cache)

    def fit(self, model_size: int) -> FitReport:
        if model_size not in self.cache:
            # Probes start from a fresh initial active set so every size is
            # fit independently of the search order.
            report = fit_at_size(self.design, self.config, model_size)
            logger.info(
                f"GGSplicing probe T={model_size} in [{self.lo}, {self.hi}]: "
                f"{self.config.criterion.value}="
                f"{self.criterion(report):.6g}"
            )
            self.cache[model_size] = report
        return self.cache[model_size]

    def criterion(self, report: FitReport) -> float:
        return report.criterion_record().value(self.config.criterion)

    def value(self, model_size: int) -> float:
        return self.criterion(self.fit(model_size))

    def search(self) -> int:
        """Run the bracketing loop; returns the terminal model size."""
        t1, t2 = lower_probe(self.lo, self.hi), upper_probe(self.lo, self.hi)
        v1, v2 = self.value(t1), self.value(t2)
        stalled_rounds = 0
        while t1 < t2:
            bracket = (self.lo, self.hi)
            if v1 <= v2:
                self.hi, t2, v2 = t2, t1, v1
                t1 = lower_probe(self.lo, self.hi)
                v1 = self.value(t1)
            else:
                self.lo, t1, v1 = t1, t2, v2
                t2 = upper_probe(self.lo, self.hi)
                v2 = self.value(t2)

            if (self.lo, self.hi) == bracket:
                stalled_rounds += 1
                if stalled_rounds >= STALL_ROUNDS:
                    raise SearchStallError(
                        f"Golden-section bracket [{self.lo}, {self.hi}] stopped "
                        f"shrinking with probes T1={t1}, T2={t2}"
                    )
            else:
                stalled_rounds = 0

        if t1 == t2:
            terminal = t1
        else:
            # Rounding crossed the probes: the bracket is exhausted.
            terminal = t1 if (v1, t1) <= (v2, t2) else t2
        self.terminal_size = terminal
        return terminal

    def refine(self, model_size: int) -> int:
        """Step to a neighbouring size inside [lo, hi] while the criterion strictly
        improves."""
        best = model_size
        while True:
            neighbours = [t for t in (best - 1, best + 1) if self.lo <= t <= self.hi]
            if not neighbours:
                return best
            candidate = min(neighbours, key=lambda t: (self.value(t), t))
            if self.value(candidate) < self.value(best):
                best = candidate
            else:
                return best

    def path(self) -> List[CriterionRecord]:
        return [self.cache[t].criterion_record() for t in sorted(self.cache)]


def ggsplicing_fit(design: GroupedDesign, config: SelectorConfig) -> FitReport:
    """Controller. The report path holds one record per distinct fit."""
    search = GoldenSectionSearch(design, config)
    selected = search.search()
    if search.config.refine_terminal:
        selected = search.refine(selected)
    best = replace(search.fit(selected), method=Method.GGS, path=search.path())
    logger.info(
        f"GGSplicing selected T={best.model_size} after {search.num_fits} distinct "
        f"fits: support {list(best.support)}"
    )
    return best
