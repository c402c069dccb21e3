import os

import pytest
from hypothesis import given

from cat1.errors import ParseError
from cat1.factorize import mapping_category
from cat1.fincat import (
    build_category,
    circle,
    cone_circle,
    cyclic_group,
    find_isomorphism,
    make_functor,
    to_point,
)
from cat1.homotopy import pi1_presentation
from cat1.textio import (
    dump_category,
    dump_functor,
    dump_presentation,
    file_names,
    format_word,
    parse_category,
    parse_functor,
    parse_presentation,
    parse_word,
    read_category,
    read_functor,
)

from .strategies import small_category, structured_category, word


def _names_ok(C):
    return len(set(C.mor_names)) == C.n_mor and all(" " not in n for n in C.mor_names + C.obj_names)


@given(small_category())
def test_category_roundtrip_corpus(C):
    again = parse_category(dump_category(C)).category
    assert again.same_structure(C)


@given(structured_category())
def test_category_roundtrip_structured(C):
    if not _names_ok(C):
        return
    text = dump_category(C, 0)
    cf = parse_category(text)
    assert cf.basepoint == 0
    assert find_isomorphism(cf.category, C) is not None
    assert dump_category(cf.category, 0) == dump_category(parse_category(dump_category(cf.category, 0)).category, 0)


def test_circle_file(samples):
    cf = read_category(os.path.join(samples, "s1.cat"))
    assert cf.category.same_structure(circle()) and cf.basepoint == 0


def test_comments_and_blank_lines():
    text = "# header\n\nobjects: a b   # two objects\nmor f: a -> b\n"
    assert parse_category(text).category.n_mor == 3


@pytest.mark.parametrize("text,line", [
    ("objects: a\nmor f a -> a\n", 2),
    ("objects: a\nmor f: a -> b\n", 2),
    ("objects: a\nmor f: a -> a\ncompose f g = f\n", 3),
    ("objects: a\nbogus line\n", 2),
    ("objects: a a\n", 1),
    ("objects: a\nmor id_a: a -> a\n", 2),
])
def test_parse_errors_cite_lines(text, line):
    with pytest.raises(ParseError) as info:
        parse_category(text, "x.cat")
    assert info.value.line == line
    assert f"x.cat:{line}" in str(info.value)


def test_missing_composite_is_parse_error():
    with pytest.raises(ParseError, match="invalid category"):
        parse_category("objects: a b c\nmor f: a -> b\nmor g: b -> c\n")


def test_missing_objects_line():
    with pytest.raises(ParseError):
        parse_category("mor f: a -> b\n")


def test_functor_roundtrip(tmp_path):
    C = cone_circle()
    (tmp_path / "c.cat").write_text(dump_category(C))
    (tmp_path / "p.cat").write_text("objects: *\n")
    F = to_point(C)
    text = dump_functor(F, "q", "c.cat", "p.cat")
    (tmp_path / "q.fun").write_text(text)
    ff = read_functor(str(tmp_path / "q.fun"))
    assert ff.functor.obj_map == F.obj_map and ff.functor.mor_map == F.mor_map
    assert dump_functor(ff.functor, "q", "c.cat", "p.cat") == text


def test_functor_file_errors(tmp_path):
    (tmp_path / "s.cat").write_text(dump_category(circle()))
    bad = "functor F: s.cat -> s.cat\nobj 0 => 0\nobj 1 => 1\nmor f => f\n"
    (tmp_path / "f.fun").write_text(bad)
    with pytest.raises(ParseError, match="no image"):
        read_functor(str(tmp_path / "f.fun"))
    bad2 = bad + "mor g => zz\n"
    (tmp_path / "g.fun").write_text(bad2)
    with pytest.raises(ParseError) as info:
        read_functor(str(tmp_path / "g.fun"))
    assert info.value.line == 5
    bad3 = "functor F: s.cat -> s.cat\nobj 0 => 1\nobj 1 => 0\nmor f => f\nmor g => g\n"
    with pytest.raises(ParseError, match="invalid functor"):
        parse_functor(bad3, str(tmp_path / "h.fun"))


def test_sample_functors_parse(samples):
    for name in os.listdir(samples):
        if name.endswith(".fun"):
            ff = read_functor(os.path.join(samples, name))
            make_functor(ff.functor.source, ff.functor.target, ff.functor.obj_map, ff.functor.mor_map)


@given(word(4))
def test_word_roundtrip(w):
    assert parse_word(format_word(w), 4) == w


def test_word_errors():
    with pytest.raises(ParseError):
        parse_word("1 x")
    with pytest.raises(ParseError):
        parse_word("0")
    with pytest.raises(ParseError):
        parse_word("3", 2)


def test_presentation_roundtrip():
    P = pi1_presentation(cone_circle(), 0).presentation
    assert parse_presentation(dump_presentation(P)).relators == P.relators
    Q = parse_presentation("gens: 2\nrel: 1 1 1\nrel: 1 2 -1 -2\n")
    assert Q.n_gens == 2 and len(Q.relators) == 2


def test_awkward_names_round_trip():
    E = mapping_category(to_point(cyclic_group(3))).category
    assert any(":" in n for n in E.mor_names)
    again = parse_category(dump_category(E)).category
    assert find_isomorphism(again, E) is not None


def test_file_names_avoid_identity_clash():
    C = build_category(["a b", "a_b"], [("id_x", "a b", "a_b")], lambda g, f: None)
    objs, mors = file_names(C)
    assert len(set(objs)) == 2 and all(" " not in o for o in objs)
    assert parse_category(dump_category(C)).category.n_mor == 3
