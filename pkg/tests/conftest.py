from pathlib import Path

import pytest

from quasik.documents import build_polytope, load_document, resolve_order
from quasik.gkm import build_gkm

ROOT = Path(__file__).resolve().parents[1]
INPUTS = ROOT / "inputs"

GOOD_INPUTS = ["cp1", "cp2", "cp3", "square_h0", "square_h1",
               "square_h2", "square_h3", "cube"]


def input_path(name: str) -> Path:
    return INPUTS / f"{name}.json"


@pytest.fixture(scope="session")
def documents():
    return {name: load_document(input_path(name)) for name in GOOD_INPUTS}


@pytest.fixture(scope="session")
def graphs(documents):
    out = {}
    for name, doc in documents.items():
        P = build_polytope(doc)
        order = resolve_order(doc, P)
        out[name] = build_gkm(P, doc.lam, order=order, bott=doc.use_bott)
    return out
