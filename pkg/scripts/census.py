"""Count indecomposables, silting classes, tilting and 2-silting complexes for the sample algebras."""

import argparse

from siltmod import algebra as al
from siltmod import silting as si
from siltmod import torsion as to
from siltmod import twoterm as tt
from siltmod.indec import enumerate_indecomposables


def census(a, name: str) -> dict:
    ind = enumerate_indecomposables(a)
    classes = to.enumerate_silting_classes(a, ind)
    complexes = tt.enumerate_two_silting(a, ind, classes)
    tilting = [cl.module.name for cl in classes if si.is_tilting(cl.module, ind).verdict]
    return {
        "algebra": name,
        "indecomposables": len(ind),
        "silting": len(classes),
        "two_silting": len(complexes),
        "tilting": tilting,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=3, help="largest linear A_n to include")
    args = parser.parse_args()
    algebras = [(al.path_algebra_a(n), f"A{n}") for n in range(1, args.max_n + 1)]
    algebras += [(al.cyclic_nakayama(n), f"N{n}") for n in (2, 3)]
    for a, name in algebras:
        row = census(a, name)
        print(
            f"{row['algebra']:>4}: {row['indecomposables']:>3} indecomposables, "
            f"{row['silting']:>3} silting, {row['two_silting']:>3} 2-silting, {len(row['tilting']):>3} tilting"
        )


if __name__ == "__main__":
    main()
