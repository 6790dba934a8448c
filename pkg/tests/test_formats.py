import random
import re

import pytest

from ctwkit import (
    CostBreakdown,
    Instance,
    ParseError,
    SchemaError,
    emit_dat,
    emit_dzn,
    emit_json,
    emit_metrics_csv,
    emit_report_csv,
    parse_dat,
    parse_json,
    parse_solution,
)
from ctwkit.bench import metrics
from ctwkit.generate import GenMode

from conftest import random_instance

R024_EXCERPT = """\
k = 26;

b = 6;

AtomicConstraints = {<1,3>, <2,3>, <3,18>, <6,18>, <15,25>, <17,21>};

SoftAtomicConstraints = {<2,1>, <4,3>, <6,5>, <12,26>};

DisjunctiveConstraints = {<8,15,8,16>, <16,12,6,16>, <9,17,9,18>};

DirectSuccessors = {1,2,8,7,};
"""


def test_parse_r024_excerpt():
    inst = parse_dat(R024_EXCERPT)
    assert inst.k == 26
    assert inst.b == 6
    for pair in ((1, 3), (2, 3), (3, 18), (6, 18), (15, 25), (17, 21)):
        assert pair in inst.atomic
    assert (2, 1) in inst.soft_atomic
    assert (8, 15, 8, 16) in inst.disjunctive
    assert set(inst.direct_successors) == {1, 2, 8, 7}  # trailing comma accepted


def test_parse_is_whitespace_insensitive():
    crushed = re.sub(r"\s+", " ", R024_EXCERPT)
    assert parse_dat(crushed).canonical() == parse_dat(R024_EXCERPT).canonical()
    assert parse_dat(R024_EXCERPT.replace("\n", "\r\n")).canonical() == parse_dat(
        R024_EXCERPT
    ).canonical()


def test_parse_empty_instance():
    text = (
        "k = 0;\nb = 0;\nAtomicConstraints = {};\nSoftAtomicConstraints = {};\n"
        "DisjunctiveConstraints = {};\nDirectSuccessors = {};\n"
    )
    inst = parse_dat(text)
    assert inst == Instance(k=0, b=0)


def _dat(k=5, b=2, atomic="{}", soft="{}", disj="{}", ds="{}"):
    return (
        f"k = {k};\nb = {b};\nAtomicConstraints = {atomic};\n"
        f"SoftAtomicConstraints = {soft};\nDisjunctiveConstraints = {disj};\n"
        f"DirectSuccessors = {ds};\n"
    )


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_dat(_dat(atomic="{<3,3>}"))
    assert err.value.line == 3

    with pytest.raises(ParseError, match="unknown parameter"):
        parse_dat(R024_EXCERPT + "Bogus = 3;\n")
    with pytest.raises(ParseError, match="assigned twice"):
        parse_dat(R024_EXCERPT + "k = 26;\n")
    with pytest.raises(ParseError, match="missing parameter"):
        parse_dat("k = 1;\nb = 0;\n")
    with pytest.raises(ParseError, match="exceeds k/2"):
        parse_dat(_dat(k=3, b=2))
    with pytest.raises(ParseError, match="outside 1..5"):
        parse_dat(_dat(atomic="{<1,6>}"))
    with pytest.raises(ParseError, match="both hard and soft"):
        parse_dat(_dat(atomic="{<1,2>}", soft="{<1,2>}"))
    with pytest.raises(ParseError, match="not a two-sided cable end"):
        parse_dat(_dat(ds="{5}"))
    with pytest.raises(ParseError, match="expected an integer"):
        parse_dat(_dat(atomic="{<1,x>}"))
    with pytest.raises(ParseError, match="trivial disjunct"):
        parse_dat(_dat(disj="{<1,1,2,3>}"))


def test_parse_dedupes_with_warning():
    with pytest.warns(UserWarning, match="duplicate"):
        inst = parse_dat(_dat(atomic="{<1,2>, <1,2>, <2,3>}"))
    assert inst.atomic == ((1, 2), (2, 3))


def test_dat_round_trip(five_job):
    assert parse_dat(emit_dat(five_job)).canonical() == five_job.canonical()
    assert parse_dat(emit_dat(Instance(k=0, b=0))) == Instance(k=0, b=0)
    rng = random.Random(47)
    for _ in range(100):
        mode = rng.choice(list(GenMode))
        inst, _ = random_instance(rng, mode)
        assert parse_dat(emit_dat(inst)).canonical() == inst.canonical()


def test_emit_dat_is_canonical():
    inst = Instance(k=4, b=0, atomic=[(3, 4), (1, 2)])
    text = emit_dat(inst)
    assert "AtomicConstraints = {<1,2>, <3,4>};" in text


_DZN_TABLE = re.compile(r"^(\w+) = \[\|(.*)\|\];$")
_DZN_EMPTY2 = re.compile(r"^(\w+) = array2d\(1\.\.0, 1\.\.(\d), \[\]\);$")


def _dzn_rows(line):
    m = _DZN_TABLE.match(line)
    if m:
        return [
            tuple(int(v) for v in row.split(","))
            for row in m.group(2).split("|")
        ]
    m = _DZN_EMPTY2.match(line)
    assert m, line
    return []


def test_emit_dzn_reference(five_job):
    lines = emit_dzn(five_job).strip().splitlines()
    assert lines[0] == "k = 5;"
    assert lines[1] == "b = 2;"
    table = {line.split(" = ")[0]: line for line in lines[2:]}
    assert _dzn_rows(table["AtomicConstraints"]) == [(3, 4), (4, 1), (5, 4)]
    assert _dzn_rows(table["SoftAtomicConstraints"]) == []
    assert _dzn_rows(table["DisjunctiveConstraints"]) == [(2, 5, 2, 1)]
    assert table["DirectSuccessors"] == "DirectSuccessors = [4];"


def test_emit_dzn_empty_instance_has_explicit_index_sets():
    text = emit_dzn(Instance(k=0, b=0))
    assert "k = 0;" in text
    assert "AtomicConstraints = array2d(1..0, 1..2, []);" in text
    assert "DisjunctiveConstraints = array2d(1..0, 1..4, []);" in text
    assert "DirectSuccessors = array1d(1..0, []);" in text


def test_emit_dzn_matches_dat_tuples():
    inst = parse_dat(R024_EXCERPT).canonical()
    lines = emit_dzn(inst).strip().splitlines()
    table = {line.split(" = ")[0]: line for line in lines[2:]}
    assert _dzn_rows(table["DisjunctiveConstraints"]) == [tuple(d) for d in inst.disjunctive]
    assert _dzn_rows(table["AtomicConstraints"]) == [tuple(a) for a in inst.atomic]


def test_json_round_trip_is_identity():
    rng = random.Random(53)
    for _ in range(100):
        mode = rng.choice(list(GenMode))
        inst, _ = random_instance(rng, mode)
        assert parse_json(emit_json(inst)) == inst


def test_json_schema_errors():
    import json as _json

    doc = _json.loads(emit_json(Instance(k=2, b=1)))
    del doc["b"]
    with pytest.raises(SchemaError, match=r"\$\.b"):
        parse_json(_json.dumps(doc))

    doc = _json.loads(emit_json(Instance(k=2, b=1)))
    doc["version"] = 99
    with pytest.raises(SchemaError, match="version"):
        parse_json(_json.dumps(doc))

    doc = _json.loads(emit_json(Instance(k=3, b=0, atomic=[(1, 2)])))
    doc["atomic"][0][0] = "one"
    with pytest.raises(SchemaError, match=r"\$\.atomic\[0\]\[0\]"):
        parse_json(_json.dumps(doc))

    with pytest.raises(ParseError):
        parse_json("{not json")


def test_cross_format_equality(five_job):
    text = emit_dat(five_job)
    inst = parse_dat(text)
    assert parse_json(emit_json(inst)) == inst


def test_parse_solution_tour_inverts():
    sol = parse_solution("instance R\ntour 5 3 4 2 1\n")
    assert sol.kind == "tour"
    assert sol.instance_id == "R"
    assert sol.pfc() == (5, 4, 2, 3, 1)


def test_parse_solution_positions_and_claims():
    text = "positions 5 4 2 3 1\nclaimed S=1 M=1 L=2 N=1 objective=161\n"
    sol = parse_solution(text)
    assert sol.pfc() == (5, 4, 2, 3, 1)
    assert sol.claimed == CostBreakdown(1, 1, 2, 1, 161)


def test_parse_solution_errors():
    with pytest.raises(ParseError, match="no 'tour' or 'positions'"):
        parse_solution("# just a comment\n")
    with pytest.raises(ParseError, match="non-integer"):
        parse_solution("tour 1 2 x\n")
    with pytest.raises(ParseError, match="unknown line"):
        parse_solution("tour 1 2\nwat 3\n")
    with pytest.raises(ParseError, match="claimed line"):
        parse_solution("tour 1 2\nclaimed 161\n")
    # a duplicated tour is not a bijection; parse keeps it, pfc() refuses
    sol = parse_solution("tour 1 1 2\n")
    with pytest.raises(ValueError):
        sol.pfc()


def test_report_csv_header_only_when_empty():
    text = emit_report_csv([])
    assert text.splitlines() == [
        "instance,k,b,state,S,M,L,N,objective,runtime_ms,nodes,"
        "sum_of_constraints,avg_constrainedness,max_constrainedness,flags"
    ]


def test_metrics_csv_shape(five_job):
    text = emit_metrics_csv([("five", metrics(five_job))])
    lines = text.splitlines()
    assert lines[0].startswith("instance,k,b,n,")
    assert lines[1].startswith("five,5,2,1,3,0,1,1,")
