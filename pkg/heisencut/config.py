# config.py
# Created On: Oct 19, 2026
#
import os
from dataclasses import dataclass, asdict
from pathlib import Path

from dotenv import load_dotenv

from heisencut.errors import ConfigError

# Define the path to the .env file
DOT_ENVPATH = Path(__file__).parent.parent.resolve() / '.env'

# Load the environment variables from the .env file
load_dotenv(DOT_ENVPATH)

DEV_MODE = os.getenv('DEV_MODE', 'off')

# Numerical thresholds
REL_TOL = float(os.getenv('HEISENCUT_REL_TOL', '1e-9'))
MEMBER_TOL = float(os.getenv('HEISENCUT_MEMBER_TOL', '1e-8'))
HERMITIAN_TOL = 1e-12
HERMITIAN_INPUT_TOL = 1e-9
UNITARY_TOL = 1e-10

# Brute-force closures are refused above this joint dimension
DIM_CAP = int(os.getenv('HEISENCUT_DIM_CAP', '81'))
MAX_DIM_CAP = 256

DEFAULT_SEED = int(os.getenv('HEISENCUT_SEED', '20240612'))

# Basic information
APP_NAME = "heisencut"
APP_DESCRIPTION = "Controller-only quantum control: interface algebras, synthesis and CQND measurements"


@dataclass(frozen=True)
class RunConfig:
    rel_tol: float = REL_TOL
    member_tol: float = MEMBER_TOL
    dim_cap: int = DIM_CAP
    seed: int = DEFAULT_SEED
    verbosity: int = 2 if DEV_MODE == 'on' else 0

    @classmethod
    def from_env(cls, **overrides):
        """
        Build a config from the environment defaults, replacing any keyword
        that is given and not None.
        """
        values = {k: v for k, v in overrides.items() if v is not None}
        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        for name in ('rel_tol', 'member_tol'):
            value = getattr(self, name)
            if not 0 < value < 1e-3:
                raise ConfigError(f"{name} must lie in (0, 1e-3), got {value!r}.")
        if not 1 <= self.dim_cap <= MAX_DIM_CAP:
            raise ConfigError(f"dim_cap must lie in [1, {MAX_DIM_CAP}], got {self.dim_cap!r}.")

    def json(self):
        return asdict(self)
