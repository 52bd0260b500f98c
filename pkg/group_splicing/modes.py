from enum import Enum


class Command(Enum):
    FIT = "fit"
    SIMULATE = "simulate"
    BENCH = "bench"
    GIC_PATH = "gic-path"
    ORACLE = "oracle"
    STABILITY = "stability"


class Method(Enum):
    GSPLICING = "gsplicing"
    SGS = "sgs"
    GGS = "ggs"


class Criterion(Enum):
    GIC = "gic"
    BIC = "bic"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


class CorrelationStructure(Enum):
    EXPONENTIAL = "exponential"
    CONSTANT = "constant"
    IID = "iid"


class ScalingComponent(Enum):
    NUM_GROUPS = "J"
    SAMPLE_SIZE = "n"
    GROUP_SIZE = "K"
