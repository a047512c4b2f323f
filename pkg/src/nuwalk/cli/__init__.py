from .config import RunConfig, parse_config
from .main import main, run
from .output import ResultTable
