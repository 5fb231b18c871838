import logging
import os
import warnings

__version__ = "0.4.0"
TOOL_NAME = "toric-gamma2"


def load_environment():
    """Load environment variables from .env file if it exists"""
    try:
        from dotenv import load_dotenv
        load_dotenv()
    except ImportError:
        pass


def _get_int(name: str, default: int, minimum: int = 0) -> int:
    load_environment()
    try:
        value = int(os.getenv(name, str(default)))
    except ValueError:
        return default
    return value if value >= minimum else default


def is_debug_mode() -> bool:
    """Check if debug mode is enabled"""
    load_environment()
    debug = os.getenv("DEBUG", "False").lower()
    return debug in ("true", "1", "yes", "on")


def get_threads() -> int:
    """Worker threads for the per-cone terminal check"""
    return _get_int("GAMMA2_THREADS", 1, minimum=1)


def setup_logging(verbose: bool = False):
    """Configure the root logger once; DEBUG env or --verbose turns on debug output"""
    level = logging.DEBUG if (verbose or is_debug_mode()) else logging.WARNING
    logging.basicConfig(level=level, format="%(name)s:%(levelname)s:%(message)s")
    logging.getLogger().setLevel(level)


def setup_warnings():
    """Setup appropriate warnings for production/development"""
    if not is_debug_mode():
        warnings.filterwarnings("ignore", category=UserWarning)
        warnings.filterwarnings("ignore", category=FutureWarning)
