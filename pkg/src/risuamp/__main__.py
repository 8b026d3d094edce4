"""Allows running the simulator with `python -m risuamp`."""
from risuamp.experiments.cli import main


if __name__ == "__main__":
    main()
