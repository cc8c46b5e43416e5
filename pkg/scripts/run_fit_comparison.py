"""Goodness-of-fit comparison of LCG and Topp-Leone on the embedded datasets.

Prints the fit table for each dataset, followed by the cells that differ from
the published values by more than 2e-3.
"""
import sys

from condconv import datasets, study


def main():
    for name in datasets.available():
        rep = study.fit_report(datasets.builtin_dataset(name))
        sys.stdout.write(rep.to_csv())
        print("# ranking by AIC: " + ", ".join(f"{r.family}/{r.estimator}" for r in rep.ranking()))
        if rep.discrepancies:
            print("# differences from published values:")
            sys.stdout.write("".join("# " + line + "\n" for line in rep.discrepancies_csv().splitlines()))
        print()


if __name__ == "__main__":
    main()
