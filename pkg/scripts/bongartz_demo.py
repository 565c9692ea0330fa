"""Complete every partial silting catalog module of an algebra file and print the complements."""

import argparse

from siltmod import io
from siltmod import repmod as rm
from siltmod import silting as si
from siltmod.indec import enumerate_indecomposables


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("algebra", help="algebra JSON file, e.g. data/a3.json")
    args = parser.parse_args()
    a = io.load_algebra(args.algebra)
    ind = enumerate_indecomposables(a)
    for t in ind.modules:
        sigma = rm.min_presentation(t)
        if not si.is_partial_silting(t, sigma).verdict:
            print(f"{t.name:>5}: not partial silting")
            continue
        c = si.bongartz_complete(t, sigma, ind)
        parts = ", ".join(f"{k}^{v}" for k, v in c.certificate["complement_decomposition"].items())
        print(f"{t.name:>5}: complement {parts}; Gen = {c.certificate['gen']}")


if __name__ == "__main__":
    main()
