import json
import os

import pytest

from cat1.cli import main, run
from cat1.fincat import find_isomorphism
from cat1.lifting import is_covering
from cat1.textio import parse_category, read_category, read_functor


def sample(samples, name):
    return os.path.join(samples, name)


def test_pi1_circle(samples):
    code, out = run(["pi1", sample(samples, "s1.cat")])
    assert code == 0
    assert out.startswith("generators: 1, relators: 0, abelianization: Z")
    assert "order: infinite" in out


def test_pi1_z3_order(samples):
    code, out = run(["pi1", sample(samples, "z3.cat")])
    assert code == 0 and "order: 3" in out


def test_pi0(samples):
    code, out = run(["pi0", sample(samples, "chain2.cat")])
    assert code == 0 and out.splitlines()[0] == "components: 1"


def test_classify_exit_codes(samples):
    assert run(["classify", sample(samples, "id_s1.fun")])[0] == 0
    code, out = run(["classify", sample(samples, "chain1_to_point.fun")])
    assert code == 1 and "fibration: false" in out.splitlines()


def test_cover_output_reparses(samples):
    code, out = run(["cover", sample(samples, "s1.cat"), "--base", "0", "--subgroup", "1 1", "--limit", "1000"])
    assert code == 0
    body = "\n".join(line for line in out.splitlines() if not line.startswith("#"))
    E = parse_category(body).category
    assert E.n_obj == 4


def test_cover_writes_files(samples, tmp_path):
    prefix = str(tmp_path / "dbl")
    code, _ = run(["cover", sample(samples, "s1.cat"), "--subgroup", "1 1", "-o", prefix])
    assert code == 0
    p = read_functor(prefix + ".fun").functor
    assert is_covering(p) and p.source.n_obj == 4


def test_universal_cover(samples):
    code, out = run(["universal-cover", sample(samples, "z3.cat"), "--json"])
    data = json.loads(out)
    assert code == 0 and data["witnesses"]["objects"] == 3


def test_undecided_exit_code(samples):
    code, out = run(["universal-cover", sample(samples, "s1.cat"), "--limit", "200"])
    assert code == 2 and out.startswith("unknown")


def test_input_errors(samples, tmp_path):
    assert run(["pi1", str(tmp_path / "missing.cat")])[0] == 3
    bad = tmp_path / "bad.cat"
    bad.write_text("objects: a\nmor f: a -> b\n")
    assert run(["pi0", str(bad)])[0] == 3
    assert run(["pi1", sample(samples, "s1.cat"), "--base", "nowhere"])[0] == 3


def test_json_shape(samples):
    code, out = run(["pi1", sample(samples, "s1.cat"), "--json"])
    data = json.loads(out)
    assert set(data) == {"verdict", "witnesses", "limits", "timings"}
    assert data["verdict"] == "true"
    assert data["witnesses"]["abelianization"] == {"torsion": [], "free_rank": 1}
    assert data["limits"]["coset_limit"] == 50000


def test_factorize_writes_consistent_files(samples, tmp_path):
    out_dir = str(tmp_path / "fact")
    code, out = run(["factorize", sample(samples, "z3_to_point.fun"), "-o", out_dir])
    assert code == 0 and "factors: true" in out
    j = read_functor(os.path.join(out_dir, "j.fun")).functor
    p = read_functor(os.path.join(out_dir, "p.fun")).functor
    E = read_category(os.path.join(out_dir, "mapping.cat")).category
    assert j.target.same_structure(E) and p.source.same_structure(E)


def test_factorize_point_into_chain(samples):
    assert run(["factorize", sample(samples, "point_to_chain2.fun")])[0] == 0


def test_nerve_kan(samples):
    code, out = run(["nerve-kan", sample(samples, "chain1.cat")])
    assert code == 1 and "dimension 2" in out
    assert run(["nerve-kan", sample(samples, "z3.cat")])[0] == 0
    assert run(["nerve-kan", sample(samples, "z3_to_point.fun")])[0] == 0
    assert run(["nerve-kan", sample(samples, "chain1_to_point.fun")])[0] == 1


def test_roundtrip(samples):
    code, out = run(["roundtrip", sample(samples, "s1.cat"), "--subgroup", "1 1 1"])
    assert code == 0 and "index 3, cover objects 6" in out


def test_validate(samples):
    assert run(["validate", sample(samples, "s1_to_chain1.fun")])[0] == 0
    code, out = run(["validate", sample(samples, "chain2.cat")])
    assert code == 0 and "3 objects, 6 morphisms" in out


def test_lift_through_double_cover(samples, tmp_path):
    prefix = str(tmp_path / "dbl")
    run(["cover", sample(samples, "s1.cat"), "--subgroup", "1 1", "-o", prefix])
    # the identity of S1 does not lift to its double cover
    code, out = run(["lift", sample(samples, "id_s1.fun"), "--cover", prefix + ".fun"])
    assert code == 1 and "obstruction word" in out
    # the basepoint inclusion into Chain(2) has nothing to do with S1
    code, _ = run(["lift", sample(samples, "point_to_chain2.fun"), "--cover", prefix + ".fun"])
    assert code == 3


def test_lift_succeeds(samples, tmp_path):
    prefix = str(tmp_path / "triv")
    run(["cover", sample(samples, "s1.cat"), "--subgroup", "1", "-o", prefix])
    lift_path = str(tmp_path / "lift.fun")
    code, _ = run(["lift", sample(samples, "id_s1.fun"), "--cover", prefix + ".fun", "-o", lift_path])
    assert code == 0
    g = read_functor(lift_path).functor
    assert g.source.n_obj == 2


def test_quotient_by_swap(tmp_path):
    (tmp_path / "two.cat").write_text("objects: a b\n")
    (tmp_path / "pt.cat").write_text("objects: *\n")
    (tmp_path / "swap.fun").write_text("functor s: two.cat -> two.cat\nobj a => b\nobj b => a\n")
    code, out = run(["quotient", str(tmp_path / "two.cat"), "--by", str(tmp_path / "swap.fun"),
                     "--compare", str(tmp_path / "pt.cat")])
    assert code == 0 and "isomorphic to" in out and "True" in out
    # the identity does not act freely on objects
    (tmp_path / "id.fun").write_text("functor i: two.cat -> two.cat\nobj a => a\nobj b => b\n")
    code, _ = run(["quotient", str(tmp_path / "two.cat"), "--by", str(tmp_path / "id.fun"),
                   "--by", str(tmp_path / "swap.fun")])
    assert code == 0


def test_quotient_of_double_cover_is_circle(samples, tmp_path):
    prefix = str(tmp_path / "dbl")
    run(["cover", sample(samples, "s1.cat"), "--subgroup", "1 1", "-o", prefix])
    E = read_category(prefix + ".cat").category
    # swap the sheets
    objs = {n: n[:-1] + ("1" if n.endswith("0") else "0") for n in E.obj_names}
    mors = {n: n[:-1] + ("1" if n.endswith("0") else "0") for n in E.mor_names if not n.startswith("id_")}
    lines = ["functor deck: dbl.cat -> dbl.cat"]
    lines += [f"obj {a} => {b}" for a, b in objs.items()]
    lines += [f"mor {a} => {b}" for a, b in mors.items()]
    (tmp_path / "deck.fun").write_text("\n".join(lines) + "\n")
    out_path = str(tmp_path / "q.cat")
    code, _ = run(["quotient", prefix + ".cat", "--by", str(tmp_path / "deck.fun"),
                   "--compare", sample(samples, "s1.cat"), "-o", out_path])
    assert code == 0
    Q = read_category(out_path).category
    assert find_isomorphism(Q, read_category(sample(samples, "s1.cat")).category) is not None


def test_main_prints(samples, capsys):
    assert main(["pi0", sample(samples, "point.cat")]) == 0
    assert "components: 1" in capsys.readouterr().out


def test_bad_verb_exits():
    with pytest.raises(SystemExit):
        run(["nonsense"])
