"""
utils_config.py - caps, budgets and paths shared by every module.

Each setting has a getter that reads the environment (after loading .env),
falls back to a default, logs what it found and returns a typed value.
`RunConfig.from_env()` snapshots all of them for a run report.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import os
import pathlib
from dataclasses import asdict, dataclass, replace
from typing import Optional

# Import external packages
from dotenv import load_dotenv

# Import functions from local modules
from utils.utils_logger import logger

#####################################
# Load Environment Variables
#####################################

load_dotenv()

#####################################
# Default Configurations
#####################################

DEFAULT_TABLE_CAP = 4096
DEFAULT_AXIOM_CAP = 64
DEFAULT_AXIOM_SAMPLES = 10_000
DEFAULT_ENUMERATION_CAP = 65_536
DEFAULT_PAIR_BUDGET = 10**9
DEFAULT_DEGREE = 2
DEFAULT_SUBRING_SAMPLES = 8

PROJECT_ROOT = pathlib.Path(__file__).parent.parent
DATA_FOLDER: pathlib.Path = PROJECT_ROOT.joinpath("data")
DEFAULT_SUITE_FILE: pathlib.Path = DATA_FOLDER.joinpath("paper_suite.json")

TOOL_VERSION = "1.0.0"

#####################################
# Getter Functions for .env Variables
#####################################


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}; using {default}")
        return default


def get_table_cap() -> int:
    """Largest ring order that gets cached addition/multiplication tables."""
    cap = _int_from_env("RING_TABLE_CAP", DEFAULT_TABLE_CAP)
    logger.debug(f"Table cap: {cap}")
    return cap


def get_axiom_cap() -> int:
    """Largest ring order checked with an exhaustive triple sweep."""
    cap = _int_from_env("RING_AXIOM_CAP", DEFAULT_AXIOM_CAP)
    logger.debug(f"Axiom cap: {cap}")
    return cap


def get_axiom_samples() -> int:
    """Number of seeded random triples for sampled axiom checks."""
    samples = _int_from_env("RING_AXIOM_SAMPLES", DEFAULT_AXIOM_SAMPLES)
    logger.debug(f"Axiom samples: {samples}")
    return samples


def get_enumeration_cap() -> int:
    """Largest ring order any builder may produce."""
    cap = _int_from_env("RING_ENUMERATION_CAP", DEFAULT_ENUMERATION_CAP)
    logger.debug(f"Enumeration cap: {cap}")
    return cap


def get_pair_budget() -> int:
    """Maximum annihilating-pair candidates examined per sweep."""
    budget = _int_from_env("RING_PAIR_BUDGET", DEFAULT_PAIR_BUDGET)
    logger.debug(f"Pair budget: {budget}")
    return budget


def get_time_cap_ms() -> int:
    """Wall-clock cap per sweep in milliseconds (0 = unlimited)."""
    cap = _int_from_env("RING_TIME_CAP_MS", 0)
    logger.debug(f"Time cap: {cap} ms")
    return cap


def get_threads() -> int:
    """Worker threads for sweeps and suite cases."""
    threads = _int_from_env("RING_THREADS", os.cpu_count() or 1)
    threads = max(1, threads)
    logger.debug(f"Threads: {threads}")
    return threads


def get_default_degree() -> int:
    """Degree bound for Armendariz checks in profiles."""
    degree = _int_from_env("RING_DEFAULT_DEGREE", DEFAULT_DEGREE)
    logger.debug(f"Default degree: {degree}")
    return degree


def get_seed() -> int:
    """Seed for sampled axiom checks and subring samples."""
    seed = _int_from_env("RING_SEED", 0)
    logger.debug(f"Seed: {seed}")
    return seed


def get_subring_samples() -> int:
    """How many singly generated subrings the inheritance cases sample."""
    samples = _int_from_env("RING_SUBRING_SAMPLES", DEFAULT_SUBRING_SAMPLES)
    logger.debug(f"Subring samples: {samples}")
    return samples


def get_log_level() -> str:
    """Level for the log file sink."""
    level = os.getenv("RING_LOG_LEVEL", "INFO").strip().upper() or "INFO"
    logger.trace(f"Log level: {level}")
    return level


def get_cache_path() -> Optional[pathlib.Path]:
    """JSON-lines result cache, or None when caching is off."""
    raw = os.getenv("RING_CACHE_PATH", "").strip()
    if not raw:
        return None
    path = pathlib.Path(raw)
    logger.debug(f"Result cache: {path}")
    return path


def get_suite_file() -> pathlib.Path:
    """Location of the curated suite cases."""
    raw = os.getenv("RING_SUITE_FILE", "").strip()
    path = pathlib.Path(raw) if raw else DEFAULT_SUITE_FILE
    logger.debug(f"Suite file: {path}")
    return path


#####################################
# Run configuration snapshot
#####################################


@dataclass(frozen=True)
class RunConfig:
    """Everything that can change a verdict or a work count."""

    table_cap: int = DEFAULT_TABLE_CAP
    axiom_cap: int = DEFAULT_AXIOM_CAP
    axiom_samples: int = DEFAULT_AXIOM_SAMPLES
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    pair_budget: int = DEFAULT_PAIR_BUDGET
    time_cap_ms: int = 0
    threads: int = 1
    degree: int = DEFAULT_DEGREE
    seed: int = 0
    subring_samples: int = DEFAULT_SUBRING_SAMPLES

    @classmethod
    def from_env(cls) -> "RunConfig":
        config = cls(
            table_cap=get_table_cap(),
            axiom_cap=get_axiom_cap(),
            axiom_samples=get_axiom_samples(),
            enumeration_cap=get_enumeration_cap(),
            pair_budget=get_pair_budget(),
            time_cap_ms=get_time_cap_ms(),
            threads=get_threads(),
            degree=get_default_degree(),
            seed=get_seed(),
            subring_samples=get_subring_samples(),
        )
        logger.info(f"Run configuration: {config}")
        return config

    def with_overrides(self, **overrides) -> "RunConfig":
        """Apply CLI flags; None values leave the setting alone."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes)

    def to_dict(self) -> dict:
        """Report layout: config{caps, budgets, threads}."""
        values = asdict(self)
        return {
            "caps": {
                "table": values["table_cap"],
                "axiom": values["axiom_cap"],
                "enumeration": values["enumeration_cap"],
            },
            "budgets": {
                "pairs": values["pair_budget"],
                "time_ms": values["time_cap_ms"],
                "axiom_samples": values["axiom_samples"],
                "subring_samples": values["subring_samples"],
            },
            "threads": values["threads"],
            "degree": values["degree"],
            "seed": values["seed"],
        }


#####################################
# Main Function for Testing
#####################################


def main():
    """Print the effective configuration."""
    logger.info("START config check.")
    config = RunConfig.from_env()
    logger.info(f"Config snapshot: {config.to_dict()}")
    logger.info("END config check.")


#####################################
# Conditional Execution
#####################################

if __name__ == "__main__":
    main()
