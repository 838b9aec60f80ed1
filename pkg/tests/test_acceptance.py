"""Acceptance gate: one check per shipped guarantee, one verdict line each.

Every test prints "ACCEPTANCE <id>: PASS/FAIL (<detail>)" before asserting,
so a full run reads as a checklist. A failing line is a real finding, not
a broken test; see README for the one known failure.
"""

import json
import random
import time
from fractions import Fraction
from pathlib import Path

from psgkit.graphs import LabelMultiset, node_multiset
from psgkit.ontology import (
    base_ontology_text,
    load_base_ontology,
    load_ontology,
    minimum_closure,
    validate_ontology,
)
from psgkit.errors import OntologyError
from psgkit.parser import export_parse_tree, import_parse_tree, parse
from psgkit.psg import build_psg
from psgkit.serialize import from_json, to_dot, to_json
from psgkit.similarity import filter_intersection, format_percent, similarity_report
from psgkit.spt import build_spt

from dot_checker import check_dot
from factories import random_label_list, random_multiset, random_valid_ontology
from test_psg import assert_psg_invariants
from test_similarity import brute_filter

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
RECURSIVE = CORPUS_DIR / "power_recursive.c"
ITERATIVE = CORPUS_DIR / "power_iterative.c"

TREE_REFERENCE = (
    (68, 35, 44, 23),
    {
        "p1": Fraction(11, 17),
        "p2": Fraction(23, 35),
        "eta": Fraction(6, 595),
        "lower": Fraction(379, 595),
        "range_lo": Fraction(379, 595),
        "range_hi": Fraction(11, 17),
        "average": Fraction(382, 595),
    },
    {"lower": "63.70", "range_lo": "63.70", "range_hi": "64.71", "average": "64.21"},
)
GRAPH_REFERENCE = (
    (24, 27, 17, 19),
    {
        "p1": Fraction(17, 24),
        "p2": Fraction(19, 27),
        "eta": Fraction(1, 216),
        "lower": Fraction(151, 216),
        "range_lo": Fraction(151, 216),
        "range_hi": Fraction(19, 27),
        "average": Fraction(303, 432),
    },
    {"lower": "69.91", "range_lo": "69.91", "range_hi": "70.37", "average": "70.14"},
)


def check(criterion, ok, detail):
    verdict = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion}: {verdict} ({detail})")
    assert ok, f"{criterion}: {detail}"


def pair_from_cards(n1, n2, i1, i2):
    """Two multisets realizing the given cardinalities: one shared label
    at the intersection counts, one private label per side for the rest."""
    left = LabelMultiset({"shared": i1, "only-left": n1 - i1})
    right = LabelMultiset({"shared": i2, "only-right": n2 - i2})
    return left, right


def exactness(criterion, cards, fractions, rendered):
    report = similarity_report(*pair_from_cards(*cards))
    got_cards = (report.n1_card, report.n2_card, report.i1_card, report.i2_card)
    mismatches = []
    if got_cards != cards:
        mismatches.append(f"cards {got_cards}")
    for field, want in fractions.items():
        got = getattr(report, field)
        if got != want:
            mismatches.append(f"{field} {got} != {want}")
    for key, want in rendered.items():
        if report.rendered[key] != want:
            mismatches.append(f"rendered {key} {report.rendered[key]!r} != {want!r}")
    check(criterion, not mismatches, "; ".join(mismatches) or "all values exact")


def test_c1_tree_pair_exact():
    exactness("C1 tree pair", *TREE_REFERENCE)


def test_c1_graph_pair_exact():
    exactness("C1 graph pair", *GRAPH_REFERENCE)


def test_c1_runtime():
    started = time.perf_counter()
    similarity_report(*pair_from_cards(*TREE_REFERENCE[0]))
    similarity_report(*pair_from_cards(*GRAPH_REFERENCE[0]))
    elapsed = time.perf_counter() - started
    check("C1 runtime", elapsed < 0.1, f"both reference reports in {elapsed * 1000:.2f} ms")


def test_c2_representation_gap():
    tree_avg = similarity_report(*pair_from_cards(*TREE_REFERENCE[0])).average
    graph_avg = similarity_report(*pair_from_cards(*GRAPH_REFERENCE[0])).average
    diff = graph_avg - tree_avg
    ok = (
        diff == Fraction(303, 432) - Fraction(382, 595)
        and format_percent(diff) in ("5.93", "5.94")
    )
    check("C2 representation gap", ok, f"diff = {diff} = {format_percent(diff)} points")


def corpus_reports():
    ontology = load_base_ontology()
    trees = [parse(path.read_text()) for path in (RECURSIVE, ITERATIVE)]
    spts = [node_multiset(build_spt(tree)) for tree in trees]
    psgs = [node_multiset(build_psg(tree, ontology)) for tree in trees]
    return similarity_report(*spts), similarity_report(*psgs)


def test_c3_direction_and_runtime():
    started = time.perf_counter()
    spt_report, psg_report = corpus_reports()
    elapsed = time.perf_counter() - started
    ok = psg_report.average > spt_report.average and elapsed < 1.0
    check(
        "C3 direction",
        ok,
        f"A_psg = {psg_report.average} ({psg_report.rendered['average']}%) > "
        f"A_spt = {spt_report.average} ({spt_report.rendered['average']}%) "
        f"in {elapsed * 1000:.1f} ms",
    )


def node_band(criterion, got, reference):
    lo, hi = reference * 0.7, reference * 1.3
    check(criterion, lo <= got <= hi, f"{got} nodes vs [{lo:.1f}, {hi:.1f}]")


def test_c3_tree_size_recursive():
    tree = parse(RECURSIVE.read_text())
    node_band("C3 tree size (recursive)", build_spt(tree).node_count(), 68)


def test_c3_tree_size_iterative():
    # Known failure: this language subset cannot express the iterative
    # sample in fewer than 46 tree nodes, so the 35-node reference band
    # tops out below any attainable size. Kept red on purpose.
    tree = parse(ITERATIVE.read_text())
    node_band("C3 tree size (iterative)", build_spt(tree).node_count(), 35)


def test_c3_graph_size_recursive():
    tree = parse(RECURSIVE.read_text())
    graph = build_psg(tree, load_base_ontology())
    node_band("C3 graph size (recursive)", graph.node_count(), 24)


def test_c3_graph_size_iterative():
    tree = parse(ITERATIVE.read_text())
    graph = build_psg(tree, load_base_ontology())
    node_band("C3 graph size (iterative)", graph.node_count(), 27)


def test_c4a_identity_and_disjoint():
    rng = random.Random(0x41)
    failures = 0
    for _ in range(500):
        m = random_multiset(rng)
        report = similarity_report(m, m)
        expected = Fraction(1) if m else Fraction(0)
        if not (report.p1 == report.p2 == report.average == expected and report.eta == 0):
            failures += 1
        left = LabelMultiset({"L" + k: v for k, v in m.items()})
        right = LabelMultiset({"R" + k: v for k, v in random_multiset(rng).items()})
        disjoint = similarity_report(left, right)
        if not (disjoint.p1 == disjoint.p2 == disjoint.average == 0):
            failures += 1
    check("C4a identity/disjoint", failures == 0, f"{failures} failures in 1000 checks")


def test_c4b_swap_symmetry():
    rng = random.Random(0x42)
    failures = 0
    for _ in range(500):
        a, b = random_multiset(rng), random_multiset(rng)
        fwd, rev = similarity_report(a, b), similarity_report(b, a)
        if not (
            fwd.eta == rev.eta
            and fwd.lower == rev.lower
            and fwd.average == rev.average
            and fwd.range_lo == rev.range_lo
            and fwd.range_hi == rev.range_hi
            and (fwd.p1, fwd.p2) == (rev.p2, rev.p1)
        ):
            failures += 1
    check("C4b swap symmetry", failures == 0, f"{failures} failures in 500 pairs")


def test_c4c_filter_against_oracle():
    rng = random.Random(0x43)
    trials = 10_000
    failures = 0
    for _ in range(trials):
        items1 = random_label_list(rng)
        items2 = random_label_list(rng)
        got = filter_intersection(LabelMultiset(items1), LabelMultiset(items2))
        if got != LabelMultiset(brute_filter(items1, items2)):
            failures += 1
    check("C4c filter oracle", failures == 0, f"{failures} mismatches in {trials} pairs")


def test_c4d_random_ontologies():
    rng = random.Random(0x44)
    trials = 1_000
    failures = 0
    for _ in range(trials):
        ontology = random_valid_ontology(rng)
        if validate_ontology(ontology):
            failures += 1
            continue
        ids = [c.id for c in ontology.concepts]
        small = {x for x in ids if rng.random() < 0.2}
        big = small | {x for x in ids if rng.random() < 0.2}
        closed = minimum_closure(ontology, small)
        if minimum_closure(ontology, closed) != closed:
            failures += 1
        elif not closed <= minimum_closure(ontology, big):
            failures += 1
    check("C4d ontology properties", failures == 0, f"{failures} failures in {trials} ontologies")


def test_c4e_graph_invariants():
    ontology = load_base_ontology()
    count = 0
    for path in (RECURSIVE, ITERATIVE):
        assert_psg_invariants(build_psg(parse(path.read_text()), ontology), ontology)
        count += 1
    check("C4e graph invariants", True, f"{count} corpus builds satisfy all invariants")


def test_c4f_name_elision():
    ontology = load_base_ontology()
    offenders = []
    for path in (RECURSIVE, ITERATIVE):
        tree = parse(path.read_text())
        names = {"power", "result"}
        single = {"x", "y"}
        for graph in (build_spt(tree), build_psg(tree, ontology)):
            for node in graph.nodes:
                if any(name in node.label for name in names) or node.label in single:
                    offenders.append(f"{path.name}: {node.label!r}")
    check("C4f name elision", not offenders, "; ".join(offenders) or "no identifier text leaks")


def test_c5_ontology_validation():
    base = load_base_ontology()
    problems = []
    if validate_ontology(base) != []:
        problems.append("base ontology fails validation")

    document = json.loads(base_ontology_text())
    corruptions = (
        ("orphan concept", lambda d: d.update(
            rules=[r for r in d["rules"] if r["from"] != "parameter-passing"])),
        ("exactly one syntactic level", lambda d: d["levels"][2].update(kind="syntactic")),
        ("non-monotone level sizes", lambda d: d.update(
            concepts=d["concepts"]
            + [{"id": f"extra-{i}", "level": 0, "display": f"Extra {i}"} for i in range(9)])),
    )
    for expected, corrupt in corruptions:
        doc = json.loads(json.dumps(document))
        corrupt(doc)
        try:
            load_ontology(doc)
            problems.append(f"{expected}: corruption accepted")
        except OntologyError as exc:
            if not any(expected in v for v in exc.violations):
                problems.append(f"{expected}: reported {exc.violations}")
    check("C5 ontology validation", not problems, "; ".join(problems)
          or "base valid; 3 corruptions rejected by name")


def test_c6_round_trips_and_determinism():
    ontology = load_base_ontology()
    problems = []
    for path in (RECURSIVE, ITERATIVE):
        tree = parse(path.read_text())
        if import_parse_tree(export_parse_tree(tree)) != tree:
            problems.append(f"{path.name}: parse tree round-trip")
        for graph in (build_spt(tree), build_psg(tree, ontology)):
            if from_json(to_json(graph)) != graph:
                problems.append(f"{path.name}: graph JSON round-trip")
            try:
                check_dot(to_dot(graph, ontology))
            except ValueError as exc:
                problems.append(f"{path.name}: DOT ({exc})")
        rebuilt = build_psg(parse(path.read_text()), ontology)
        if to_json(rebuilt) != to_json(build_psg(tree, ontology)):
            problems.append(f"{path.name}: rerun not byte-identical")
    check("C6 round trips", not problems, "; ".join(problems)
          or "tree/JSON round-trips, DOT well-formed, reruns byte-identical")
