import sys

from lab import main as run_lab


def main() -> None:
    run_lab(sys.argv[1:])


if __name__ == "__main__":
    main()
