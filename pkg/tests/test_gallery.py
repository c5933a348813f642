import json
import os
from pathlib import Path

import pytest

from invar.cli import GALLERY, run_gallery_entry

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("name", sorted(GALLERY))
def test_gallery_matches_golden(name):
    out = run_gallery_entry(name, "json")
    path = GOLDEN / f"{name}.json"
    if os.environ.get("INVAR_REGEN_GOLDEN"):
        path.write_text(out + "\n", encoding="utf-8")
    assert path.read_text(encoding="utf-8") == out + "\n"


def test_gallery_size():
    assert len(GALLERY) >= 12


def test_cyclicone5_fiber_entry():
    a = json.loads(run_gallery_entry("cyclicone5-fiber"))
    b = json.loads(run_gallery_entry("cyclicone5-l3-fiber"))
    assert (a["result"]["dim_mod_m_cap"], b["result"]["dim_mod_m_cap"]) == (8, 9)


def test_klein2_entry():
    doc = json.loads(run_gallery_entry("klein-2"))
    assert doc["result"]["relations"] == ["A*B*C - D^2"]
    mons = {g["symbol"]: g["monomial"] for g in doc["result"]["generators"]}
    assert mons["D"] == "X*Y*W"
