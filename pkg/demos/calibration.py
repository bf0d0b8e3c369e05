"""Show which reading of the Grassmannian I-series survives the reference periods."""

from lgmirror.periods import calibrate_iseries


def main() -> None:
    cal = calibrate_iseries()
    for name, power, value in cal.evidence:
        print(f"constant term of ({name})^{power} = {value}")
    print("\nrejected:")
    for reading, values in cal.rejected:
        print(f"  {reading.describe()}\n    gives {[str(v) for v in values]}")
    print("\nchosen:", cal.reading.describe())


if __name__ == "__main__":
    main()
