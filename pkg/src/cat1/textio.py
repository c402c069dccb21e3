"""Line-oriented text formats for categories, functors and presentations.

Category files::

    objects: a b c
    mor f: a -> b
    compose g f = h        # g after f, for every composable non-identity pair
    basepoint: a           # optional

Identities are implicit and named ``id_<object>``. Functor files::

    functor F: source.cat -> target.cat
    obj a => x
    mor f => g
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Optional

from .errors import ParseError, ValidationError
from .fincat import FinCat, Functor, RawCategory, make_functor, validate_category


def _strip(line: str) -> str:
    i = line.find("#")
    return (line if i < 0 else line[:i]).strip()


@dataclass
class CategoryFile:
    category: FinCat
    basepoint: Optional[int] = None


def parse_category(text: str, path: Optional[str] = None) -> CategoryFile:
    objects = None
    morphisms = []
    compose = []
    basepoint = None
    seen_mor = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("objects:"):
            if objects is not None:
                raise ParseError("duplicate 'objects:' line", line=lineno, path=path)
            objects = line[len("objects:"):].split()
            if len(set(objects)) != len(objects):
                raise ParseError("duplicate object name", line=lineno, path=path)
        elif line.startswith("mor "):
            body = line[4:]
            if ":" not in body or "->" not in body:
                raise ParseError("expected 'mor NAME: SRC -> TGT'", line=lineno, path=path)
            name, ends = body.split(":", 1)
            name = name.strip()
            s, t = (x.strip() for x in ends.split("->", 1))
            if not name or not s or not t or len(name.split()) != 1:
                raise ParseError("malformed morphism declaration", line=lineno, path=path)
            if name.startswith("id_"):
                raise ParseError(f"morphism name {name!r} is reserved for identities", line=lineno, path=path)
            if name in seen_mor:
                raise ParseError(f"duplicate morphism {name!r}", line=lineno, path=path)
            seen_mor[name] = lineno
            morphisms.append((name, s, t, lineno))
        elif line.startswith("compose "):
            body = line[len("compose "):]
            if "=" not in body:
                raise ParseError("expected 'compose G F = H'", line=lineno, path=path)
            lhs, rhs = body.split("=", 1)
            parts = lhs.split()
            rhs = rhs.strip()
            if len(parts) != 2 or len(rhs.split()) != 1:
                raise ParseError("expected 'compose G F = H'", line=lineno, path=path)
            compose.append((parts[0], parts[1], rhs, lineno))
        elif line.startswith("basepoint:"):
            basepoint = line[len("basepoint:"):].strip()
        else:
            raise ParseError(f"unrecognized line {line!r}", line=lineno, path=path)
    if objects is None:
        raise ParseError("missing 'objects:' line", path=path)
    oset = set(objects)
    for name, s, t, lineno in morphisms:
        for end in (s, t):
            if end not in oset:
                raise ParseError(f"unknown object {end!r}", line=lineno, path=path)
    known = set(seen_mor) | {f"id_{o}" for o in objects}
    for g, f, h, lineno in compose:
        for x in (g, f, h):
            if x not in known:
                raise ParseError(f"unknown morphism {x!r}", line=lineno, path=path)
    raw = RawCategory(
        objects=list(objects),
        morphisms=[(f"id_{o}", o, o) for o in objects] + [(n, s, t) for n, s, t, _ in morphisms],
        identities={o: f"id_{o}" for o in objects},
        compose=[(g, f, h) for g, f, h, _ in compose],
    )
    try:
        C = validate_category(raw)
    except ValidationError as exc:
        raise ParseError(f"invalid category: {exc}", path=path) from exc
    bp = None
    if basepoint is not None:
        if basepoint not in oset:
            raise ParseError(f"basepoint {basepoint!r} is not an object", path=path)
        bp = C.obj_index(basepoint)
    return CategoryFile(C, bp)


_UNSAFE = re.compile(r"[\s:#=>]")


def _unique(names, reserved=()) -> list:
    seen = set(reserved)
    out = []
    for n in names:
        base = _UNSAFE.sub("_", n) or "_"
        cand, k = base, 1
        while cand in seen:
            k += 1
            cand = f"{base}~{k}"
        seen.add(cand)
        out.append(cand)
    return out


def file_names(C: FinCat) -> tuple:
    """Object and morphism names that survive a write/parse round trip."""
    objs = _unique(C.obj_names)
    ids = {f"id_{o}" for o in objs}
    mors = [None] * C.n_mor
    for o in C.objects:
        mors[C.ident(o)] = f"id_{objs[o]}"
    plain = [C.mor_names[m] for m in C.nonidentities]
    # a non-identity may not look like an identity name
    plain = ["m_" + n if n.startswith("id_") else n for n in plain]
    for m, n in zip(C.nonidentities, _unique(plain, ids)):
        mors[m] = n
    return objs, mors


def dump_category(C: FinCat, basepoint: Optional[int] = None) -> str:
    on, mn = file_names(C)
    lines = ["objects: " + " ".join(on)]
    for m in C.nonidentities:
        lines.append(f"mor {mn[m]}: {on[C.src[m]]} -> {on[C.tgt[m]]}")
    for f in C.nonidentities:
        for g in C.out_mors[C.tgt[f]]:
            if C.is_identity(g):
                continue
            lines.append(f"compose {mn[g]} {mn[f]} = {mn[C.comp[(g, f)]]}")
    if basepoint is not None:
        lines.append(f"basepoint: {on[basepoint]}")
    return "\n".join(lines) + "\n"


def read_category(path: str) -> CategoryFile:
    with open(path) as fh:
        return parse_category(fh.read(), path)


@dataclass
class FunctorFile:
    name: str
    functor: Functor
    source_path: str
    target_path: str
    source_basepoint: Optional[int] = None
    target_basepoint: Optional[int] = None


def parse_functor(text: str, path: Optional[str] = None, loader=None) -> FunctorFile:
    """Parse a functor file. ``loader(relpath)`` returns a :class:`CategoryFile`."""
    base = os.path.dirname(path) if path else "."
    if loader is None:
        def loader(rel):
            return read_category(rel if os.path.isabs(rel) else os.path.join(base, rel))
    header = None
    objs, mors = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("functor "):
            body = line[len("functor "):]
            if ":" not in body or "->" not in body:
                raise ParseError("expected 'functor NAME: SRC -> TGT'", line=lineno, path=path)
            name, ends = body.split(":", 1)
            s, t = (x.strip() for x in ends.split("->", 1))
            header = (name.strip(), s, t)
        elif line.startswith("obj ") or line.startswith("mor "):
            kind, body = line[:3], line[4:]
            if "=>" not in body:
                raise ParseError(f"expected '{kind} A => B'", line=lineno, path=path)
            a, b = (x.strip() for x in body.split("=>", 1))
            table = objs if kind == "obj" else mors
            if a in table:
                raise ParseError(f"duplicate image for {a!r}", line=lineno, path=path)
            table[a] = (b, lineno)
        else:
            raise ParseError(f"unrecognized line {line!r}", line=lineno, path=path)
    if header is None:
        raise ParseError("missing 'functor' header", path=path)
    name, spath, tpath = header
    sf, tf = loader(spath), loader(tpath)
    A, B = sf.category, tf.category
    obj_map = []
    for o in A.objects:
        nm = A.obj_names[o]
        if nm not in objs:
            raise ParseError(f"no image given for object {nm!r}", path=path)
        img, lineno = objs[nm]
        if img not in B.obj_names:
            raise ParseError(f"unknown target object {img!r}", line=lineno, path=path)
        obj_map.append(B.obj_index(img))
    mor_map = list(obj_map)
    for m in A.nonidentities:
        nm = A.mor_names[m]
        if nm not in mors:
            raise ParseError(f"no image given for morphism {nm!r}", path=path)
        img, lineno = mors[nm]
        if img not in B.mor_names:
            raise ParseError(f"unknown target morphism {img!r}", line=lineno, path=path)
        mor_map.append(B.mor_index(img))
    for extra in set(objs) - set(A.obj_names):
        raise ParseError(f"unknown source object {extra!r}", line=objs[extra][1], path=path)
    for extra in set(mors) - set(A.mor_names):
        raise ParseError(f"unknown source morphism {extra!r}", line=mors[extra][1], path=path)
    try:
        F = make_functor(A, B, obj_map, mor_map)
    except ValidationError as exc:
        raise ParseError(f"invalid functor: {exc}", path=path) from exc
    return FunctorFile(name, F, spath, tpath, sf.basepoint, tf.basepoint)


def dump_functor(F: Functor, name: str, source_path: str, target_path: str) -> str:
    A, B = F.source, F.target
    (ao, am), (bo, bm) = file_names(A), file_names(B)
    lines = [f"functor {name}: {source_path} -> {target_path}"]
    lines += [f"obj {ao[o]} => {bo[F.obj_map[o]]}" for o in A.objects]
    lines += [f"mor {am[m]} => {bm[F.mor_map[m]]}" for m in A.nonidentities]
    return "\n".join(lines) + "\n"


def read_functor(path: str) -> FunctorFile:
    with open(path) as fh:
        return parse_functor(fh.read(), path)


# ----------------------------------------------------------------------
# words and presentations
# ----------------------------------------------------------------------

def format_word(word) -> str:
    return " ".join(str(x) for x in word) if word else "e"


def parse_word(text: str, n_gens: Optional[int] = None) -> tuple:
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        word = tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"word {text!r} must be signed generator indices") from None
    for x in word:
        if x == 0 or (n_gens is not None and abs(x) > n_gens):
            raise ParseError(f"generator index {x} out of range in {text!r}")
    return word


def dump_presentation(P) -> str:
    lines = [f"gens: {P.n_gens}"]
    lines += [f"rel: {format_word(r)}" for r in P.relators]
    return "\n".join(lines) + "\n"


def parse_presentation(text: str):
    from .homotopy.words import GroupPresentation

    n = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("gens:"):
            n = int(line[5:])
        elif line.startswith("rel:"):
            rels.append(line[4:])
        else:
            raise ParseError(f"unrecognized line {line!r}", line=lineno)
    if n is None:
        raise ParseError("missing 'gens:' line")
    return GroupPresentation(n, tuple(parse_word(r, n) for r in rels))
