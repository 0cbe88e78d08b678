"""Command line interface: subcommands, output formats, exit codes."""

import json

import pytest

from evenlat.cli import main
from evenlat.niemeier import golay_involutions


A2 = [[2, -1], [-1, 2]]
E8 = [[2, 0, -1, 0, 0, 0, 0, 0],
      [0, 2, 0, -1, 0, 0, 0, 0],
      [-1, 0, 2, -1, 0, 0, 0, 0],
      [0, -1, -1, 2, -1, 0, 0, 0],
      [0, 0, 0, -1, 2, -1, 0, 0],
      [0, 0, 0, 0, -1, 2, -1, 0],
      [0, 0, 0, 0, 0, -1, 2, -1],
      [0, 0, 0, 0, 0, 0, -1, 2]]


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGenus:
    def test_a2_plain(self, tmp_path, capsys):
        path = write(tmp_path, "a2.json", A2)
        code, out, _ = run(capsys, ["genus", path])
        assert code == 0
        assert "signature: 2 0" in out
        assert "det: 3" in out
        assert "3^{-1}" in out

    def test_e8_json(self, tmp_path, capsys):
        path = write(tmp_path, "e8.json", {"gram": E8})
        code, out, _ = run(capsys, ["genus", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["signature"] == [8, 0]
        assert doc["det"] == 1
        assert doc["q"] == ""

    def test_indefinite(self, tmp_path, capsys):
        path = write(tmp_path, "u.json", [[0, 1], [1, 0]])
        code, out, _ = run(capsys, ["genus", "--json", path])
        assert code == 0
        assert json.loads(out)["signature"] == [1, 1]

    def test_deterministic_bytes(self, tmp_path, capsys):
        path = write(tmp_path, "a2.json", A2)
        _, first, _ = run(capsys, ["genus", "--json", path])
        _, second, _ = run(capsys, ["genus", "--json", path])
        assert first == second


class TestDiscform:
    def test_a2(self, tmp_path, capsys):
        path = write(tmp_path, "a2.json", A2)
        code, out, _ = run(capsys, ["discform", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["orders"] == [3]
        assert doc["q"] in (["2/3"], ["4/3"])

    def test_unimodular_empty(self, tmp_path, capsys):
        path = write(tmp_path, "e8.json", E8)
        code, out, _ = run(capsys, ["discform", "--json", path])
        assert code == 0
        assert json.loads(out)["orders"] == []


class TestRootsAndCount:
    def test_roots_e8(self, tmp_path, capsys):
        path = write(tmp_path, "e8.json", E8)
        code, out, _ = run(capsys, ["roots", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["type"] == "E_8"
        assert doc["root_count"] == 240
        assert len(doc["simple_roots"]) == 8

    def test_count_norm2(self, tmp_path, capsys):
        path = write(tmp_path, "e8.json", E8)
        code, out, _ = run(capsys, ["count", "--json", "--norm", "2", path])
        assert code == 0
        assert json.loads(out)["count"] == 240

    def test_count_norm4(self, tmp_path, capsys):
        path = write(tmp_path, "e8.json", E8)
        code, out, _ = run(capsys, ["count", "--json", "--norm", "4", path])
        assert code == 0
        assert json.loads(out)["count"] == 2160


class TestSublattices:
    def test_complement(self, tmp_path, capsys):
        # A_1 inside A_2: complement is generated by a norm-6 vector
        path = write(tmp_path, "sub.json",
                     {"gram": A2, "vectors": [[1, 0]]})
        code, out, _ = run(capsys, ["complement", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["rank"] == 1
        assert doc["gram"] == [[6]]

    def test_saturate(self, tmp_path, capsys):
        # index-2 sublattice of A_1: saturation recovers the norm-2 vector
        path = write(tmp_path, "sub.json",
                     {"gram": [[2]], "vectors": [[2]]})
        code, out, _ = run(capsys, ["saturate", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["rank"] == 1
        assert doc["gram"] == [[2]]


class TestNiemeier:
    def test_build(self, capsys):
        code, out, _ = run(capsys, ["niemeier", "--json", "build", "23"])
        assert code == 0
        doc = json.loads(out)
        assert doc["root_type"] == "24A_1"
        assert doc["rank"] == 24
        assert doc["det"] == 1

    def test_verify(self, capsys):
        code, out, _ = run(capsys, ["niemeier", "--json", "verify", "1"])
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_out_of_range(self, capsys):
        code, _, err = run(capsys, ["niemeier", "build", "24"])
        assert code == 2
        assert "1..23" in err


class TestMarking:
    def test_involution_marking(self, tmp_path, capsys):
        perm = golay_involutions(limit=1)[0]
        orbits, seen = [], set()
        for i in range(24):
            if i in seen:
                continue
            orbit = [i] if perm[i] == i else sorted((i, perm[i]))
            seen.update(orbit)
            orbits.append([x + 1 for x in orbit])
        alpha = next(o[0] for o in orbits if len(o) == 1)
        path = write(tmp_path, "marking.json",
                     {"j": 23, "orbits": orbits, "alpha": alpha})
        code, out, _ = run(capsys, ["marking", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["S_rank"] == 9
        assert doc["coinvariant_rootfree"] is True

    def test_missing_fields(self, tmp_path, capsys):
        path = write(tmp_path, "marking.json", {"j": 23})
        code, _, err = run(capsys, ["marking", path])
        assert code == 2
        assert "orbits" in err


class TestGroups:
    def test_aut_a2(self, tmp_path, capsys):
        path = write(tmp_path, "a2.json", A2)
        code, out, _ = run(capsys, ["aut", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["order"] == 12
        assert doc["root_type"] == "A_2"

    def test_oq(self, tmp_path, capsys):
        path = write(tmp_path, "d.json", [[2, 0], [0, 6]])
        code, out, _ = run(capsys, ["oq", "--json", path])
        assert code == 0
        assert json.loads(out)["order"] >= 1

    def test_ms_rank3(self, tmp_path, capsys):
        path = write(tmp_path, "d.json", [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
        code, out, _ = run(capsys, ["ms", "--json", path])
        assert code == 0
        assert json.loads(out)["ms"] >= 1

    def test_ms_wrong_rank(self, tmp_path, capsys):
        path = write(tmp_path, "a2.json", A2)
        code, _, err = run(capsys, ["ms", path])
        assert code == 2
        assert "rank-3" in err

    def test_dcosets(self, tmp_path, capsys):
        path = write(tmp_path, "d.json",
                     {"gram": [[2, 0, 0], [0, 2, 0], [0, 0, 4]],
                      "a": "image", "b": "trivial"})
        code, out, _ = run(capsys, ["dcosets", "--json", path])
        assert code == 0
        doc = json.loads(out)
        assert doc["double_cosets"] >= 1
        assert doc["b_order"] == 1


class TestTableCheck:
    def test_table3_genus(self, capsys):
        code, out, _ = run(capsys, ["table-check", "--json", "table3-genus"])
        assert code == 0
        doc = json.loads(out)
        assert doc["counts"].get("mismatch", 0) == 0
        assert doc["counts"]["match"] > 0

    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, ["table-check", "no-such-suite"])
        assert code == 2


class TestErrors:
    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("[[2, -1], [-1, 2]")
        code, _, err = run(capsys, ["genus", str(path)])
        assert code == 2
        assert "malformed JSON" in err
        assert "line" in err and "column" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(capsys, ["genus", str(tmp_path / "nope.json")])
        assert code == 2
        assert "cannot read" in err

    def test_not_a_gram(self, tmp_path, capsys):
        path = write(tmp_path, "bad.json", {"foo": 1})
        code, _, err = run(capsys, ["genus", path])
        assert code == 2
        assert "gram" in err

    def test_odd_diagonal_rejected(self, tmp_path, capsys):
        path = write(tmp_path, "odd.json", [[1]])
        code, _, err = run(capsys, ["genus", path])
        assert code == 2

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, ["frobnicate"])
        assert code == 2

    def test_help_exits_zero(self, capsys):
        code, _, _ = run(capsys, ["--help"])
        assert code == 0
