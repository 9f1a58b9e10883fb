"""
Fixture corpus: diagrams in ``fixtures/*.pd`` and frozen results in
``fixtures/expected/*.json``.

A ``.pd`` file holds one line of ``PD[...]`` or ``BR[...]`` text.  The
expected record of a fixture is what :func:`fixture_record` computes; it is
regenerated with ``python3 -m khlasagna.corpus --write`` and compared
byte-for-byte by the regression tests.
"""

from __future__ import annotations

import json
import sys
from functools import lru_cache
from importlib import resources

from .frobenius import DeformationMultiset, unknot_algebra
from .homology import deformed_homology, integral_homology, rational_homology
from .khcomplex import cube
from .linkdiag import PlanarDiagram, parse_diagram, seifert_data

__all__ = ["fixture_names", "load_fixture", "fixture_text", "expected", "fixture_record", "POSITIVE"]

# positive diagrams with their (crossings, Seifert circles)
POSITIVE = {"trefoil_right": (3, 2), "hopf_pos": (2, 2), "t24": (4, 2)}


def _dir():
    return resources.files(__package__) / "fixtures"


def fixture_names() -> list[str]:
    return sorted(p.name[:-3] for p in _dir().iterdir() if p.name.endswith(".pd"))


def fixture_text(name: str) -> str:
    path = _dir() / (name + ".pd")
    if not path.is_file():
        raise KeyError("unknown fixture %r" % name)
    return path.read_text().strip()


@lru_cache(maxsize=None)
def load_fixture(name: str) -> PlanarDiagram:
    return parse_diagram(fixture_text(name))


def expected(name: str) -> dict:
    return json.loads((_dir() / "expected" / (name + ".json")).read_text())


def fixture_record(name: str) -> dict:
    """Everything the corpus freezes about one fixture."""
    D = load_fixture(name)
    k, chi = seifert_data(D)
    gl1 = rational_homology(cube(D, unknot_algebra(1)))
    hz = integral_homology(cube(D, unknot_algebra(2)))
    hd = deformed_homology(D, DeformationMultiset([0, 1]))
    return {
        "name": name,
        "pd": D.to_pd(),
        "crossings": D.n_crossings,
        "writhe": D.writhe,
        "components": D.n_components,
        "seifert": {"k": k, "chi": chi},
        "gl1": gl1.to_json("fr")["free"],
        "khr2_z": hz.to_json("fr"),
        "deformed_0_1": hd.to_json(),
    }


def _dump(record) -> str:
    return json.dumps(record, sort_keys=True, indent=1) + "\n"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out = _dir() / "expected"
    for name in fixture_names():
        text = _dump(fixture_record(name))
        if "--write" in argv:
            with open(str(out / (name + ".json")), "w") as fh:
                fh.write(text)
        print(name)


if __name__ == "__main__":
    main()
