"""RIS-UAMP: channel estimation for RIS-aided MIMO systems."""
import logging
from importlib.metadata import version


__version__ = version(__name__)

logging.getLogger(__name__).addHandler(logging.NullHandler())
