"""Run the zs command line without installing the package: ``python main.py <verb> ...``."""

from src.cli import main

if __name__ == "__main__":
    main()
