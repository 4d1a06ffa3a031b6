"""
Configuration module for bergman-zeros
"""
import os
from dataclasses import dataclass, field
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


@dataclass
class ZerosConfig:
    """Process-wide defaults, overridable through environment variables"""

    # Monte Carlo defaults
    SEED: int = field(default_factory=lambda: int(os.getenv('ZEROS_SEED', '42')))
    SAMPLES: int = field(default_factory=lambda: int(os.getenv('ZEROS_SAMPLES', '20000')))
    WORKERS: int = field(default_factory=lambda: int(os.getenv('ZEROS_WORKERS', '1')))
    BATCH_SIZE: int = field(default_factory=lambda: int(os.getenv('ZEROS_BATCH_SIZE', '500')))
    MAX_DISCARD_FRACTION: float = field(default_factory=lambda: float(os.getenv('ZEROS_MAX_DISCARD_FRACTION', '0.01')))

    # Root finder
    ROOT_TOL: float = field(default_factory=lambda: float(os.getenv('ZEROS_ROOT_TOL', '1e-12')))
    ROOT_MAX_ITER: int = field(default_factory=lambda: int(os.getenv('ZEROS_ROOT_MAX_ITER', '200')))

    # Radial histogram of |root|
    HIST_BINS: int = field(default_factory=lambda: int(os.getenv('ZEROS_HIST_BINS', '60')))
    HIST_MAX: float = field(default_factory=lambda: float(os.getenv('ZEROS_HIST_MAX', '1.5')))

    # Closed forms fall back to series when (1 - |z|)(n + 1) is below this
    GUARD_BAND: float = field(default_factory=lambda: float(os.getenv('ZEROS_GUARD_BAND', '0.05')))

    # General Settings
    OUTPUT_DIR: str = field(default_factory=lambda: os.getenv('ZEROS_OUTPUT_DIR', 'output'))
    DEBUG: bool = field(default_factory=lambda: os.getenv('ZEROS_DEBUG', 'False').lower() == 'true')

    def validate(self):
        """Validate configuration"""
        if self.SAMPLES < 1:
            raise ValueError("ZEROS_SAMPLES must be >= 1")
        if self.WORKERS < 1 or self.BATCH_SIZE < 1:
            raise ValueError("ZEROS_WORKERS and ZEROS_BATCH_SIZE must be >= 1")
        if not 0 <= self.SEED < 2 ** 64:
            raise ValueError("ZEROS_SEED must be a 64-bit unsigned integer")
        if self.ROOT_TOL <= 0 or self.ROOT_MAX_ITER < 1:
            raise ValueError("root finder needs ZEROS_ROOT_TOL > 0 and ZEROS_ROOT_MAX_ITER >= 1")
        if self.HIST_BINS < 1 or self.HIST_MAX <= 0:
            raise ValueError("histogram needs ZEROS_HIST_BINS >= 1 and ZEROS_HIST_MAX > 0")
        if not 0 <= self.MAX_DISCARD_FRACTION < 1:
            raise ValueError("ZEROS_MAX_DISCARD_FRACTION must lie in [0, 1)")
        if self.GUARD_BAND < 0:
            raise ValueError("ZEROS_GUARD_BAND must be >= 0")
        return True


# Create global config instance
config = ZerosConfig()
