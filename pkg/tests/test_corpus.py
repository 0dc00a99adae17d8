import io
from fractions import Fraction

import pytest
from hypothesis import given

from deptree.arrangement import LinearArrangement
from deptree.bounds import BoundViolation
from deptree.corpus import (
    SKIP_REASONS,
    EdgeListError,
    ParseLog,
    SentenceRecord,
    aggregate_by_length,
    analyze_corpus,
    analyze_tree,
    decimal_str,
    format_edgelist,
    parse_conllu,
    parse_edgelist,
    render_csv,
    to_conllu,
)
from deptree.fixtures import T1_EDGES, T1_HEADS, fixture_path
from strategies import arranged_trees, trees


def conllu(*sentences):
    blocks = []
    for heads in sentences:
        blocks.append("\n".join(f"{i}\tw{i}\t_\t_\t_\t_\t{h}\t_\t_\t_" for i, h in enumerate(heads, 1)))
    return "\n\n".join(blocks) + "\n"


def parse(text):
    plog = ParseLog()
    return list(parse_conllu(io.StringIO(text), plog)), plog


class TestConllu:
    def test_two_tokens(self):
        records, plog = parse(conllu((2, 0)))
        assert records == [SentenceRecord("1", 2, (2, 0))]
        assert records[0].tree().edges == ((1, 2),)
        assert plog.skips == []

    def test_multi_root(self):
        records, plog = parse(conllu((0, 0, 1)))
        assert records == []
        assert [s.reason for s in plog.skips] == ["multi-root"]

    @pytest.mark.parametrize(
        "heads, reason",
        [((2, 1), "no-root"), ((0, 3, 4, 2), "cycle"), ((0, 2), "cycle"), ((0, 5, 1), "bad-head"), ((0, -1), "bad-head")],
    )
    def test_reasons(self, heads, reason):
        _, plog = parse(conllu(heads))
        assert [s.reason for s in plog.skips] == [reason]

    def test_bad_lines(self):
        text = "1\ta\t_\t_\t_\t_\t0\t_\t_\t_\n2\tb\t_\t_\t_\t_\tx\t_\t_\t_\n\n1\ta\t0\n\n"
        records, plog = parse(text)
        assert records == []
        assert [s.reason for s in plog.skips] == ["bad-line", "bad-line"]
        assert plog.skips[0].line == 2

    def test_ranges_and_empty_nodes_ignored(self):
        text = (
            "# sent_id = x\n"
            "1-2\tdont\t_\t_\t_\t_\t_\t_\t_\t_\n"
            "1\tdo\t_\t_\t_\t_\t0\t_\t_\t_\n"
            "2\tnt\t_\t_\t_\t_\t1\t_\t_\t_\n"
            "2.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n"
            "3\tgo\t_\t_\t_\t_\t1\t_\t_\t_\n"
        )
        records, _ = parse(text)
        assert records == [SentenceRecord("x", 3, (0, 1, 1))]

    def test_stream_continues_after_skips(self):
        records, plog = parse(conllu((0, 0), (2, 0), (1, 1), (0, 1)))
        assert [r.head for r in records] == [(2, 0), (0, 1)]
        assert plog.blocks == 4 and plog.accepted + len(plog.skips) == plog.blocks

    def test_bundled_corpus_counts(self):
        with fixture_path("mini.conllu").open() as fh:
            plog = ParseLog()
            records = list(parse_conllu(fh, plog))
        assert plog.counts() == {"multi-root": 1, "no-root": 1, "cycle": 1, "bad-head": 1, "bad-line": 2}
        assert set(plog.counts()) == set(SKIP_REASONS)
        assert plog.accepted + len(plog.skips) == plog.blocks == 11
        t1 = next(r for r in records if r.sent_id == "t1")
        assert t1.head == T1_HEADS
        assert t1.tree().edges == T1_EDGES

    @given(trees(min_n=1))
    def test_round_trip(self, tree):
        # root at vertex 1, orient the rest by BFS
        adj = {v: [] for v in range(1, tree.n + 1)}
        for u, v in tree.edges:
            adj[u].append(v)
            adj[v].append(u)
        head = [0] * tree.n
        seen, frontier = {1}, [1]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        head[w - 1] = u
                        nxt.append(w)
            frontier = nxt
        record = SentenceRecord("s", tree.n, tuple(head))
        records, plog = parse(to_conllu(record))
        assert records == [record] and not plog.skips
        assert records[0].tree() == tree


class TestEdgeList:
    def test_t1_file(self):
        with fixture_path("t1.edges").open() as fh:
            tree, arr = parse_edgelist(fh)
        assert tree.edges == T1_EDGES and arr is None

    def test_fig2_file(self):
        with fixture_path("fig2.edges").open() as fh:
            _, arr = parse_edgelist(fh)
        assert arr.positions == (1, 4, 8, 3, 6, 9, 7, 2, 5)

    def test_wrong_edge_count(self):
        with pytest.raises(EdgeListError, match="EdgeCountError"):
            parse_edgelist(io.StringIO("3\n1 2\n2 3\n1 3\n"))

    def test_identity_line(self):
        tree, arr = parse_edgelist(io.StringIO("3\n1 2\n2 3\n1 2 3\n"))
        assert arr == LinearArrangement.identity(3)

    def test_two_vertex_arrangement(self):
        _, arr = parse_edgelist(io.StringIO("2\n1 2\n2 1\n"))
        assert arr.positions == (2, 1)

    def test_comments_and_line_numbers(self):
        with pytest.raises(EdgeListError) as info:
            parse_edgelist(io.StringIO("# hi\n3\n1 2\n2 x\n"))
        assert info.value.line == 4
        with pytest.raises(EdgeListError):
            parse_edgelist(io.StringIO("# only comments\n"))
        with pytest.raises(EdgeListError):
            parse_edgelist(io.StringIO("3\n1 2\n2 3\n1 1 3\n"))

    @given(arranged_trees())
    def test_round_trip(self, case):
        tree, arr = case
        assert parse_edgelist(io.StringIO(format_edgelist(tree, arr))) == (tree, arr)


class TestAnalysis:
    def _records(self):
        with fixture_path("mini.conllu").open() as fh:
            return list(parse_conllu(fh))

    def test_t1_report(self):
        report = next(analyze_corpus(self._records(), validate=True))
        assert report.sent_id == "t1"
        assert report.crossings.C == 0
        b = report.bounds
        assert b.dmin_hubiness == Fraction(17, 16) <= b.dmin_star_ensemble == Fraction(19, 16) <= report.lengths.mean_d
        assert report.lengths.mean_d == Fraction(11, 8)

    def test_min_n_filter_preserves_order(self):
        ids = [r.sent_id for r in analyze_corpus(self._records(), min_n=3)]
        assert ids == ["t1", "fig2", "mwt"]
        with pytest.raises(ValueError):
            list(analyze_corpus([], min_n=1))

    def test_three_sentences_one_malformed(self):
        records, plog = parse(conllu((2, 0), (0, 0), (0, 1, 2)))
        assert len(list(analyze_corpus(records))) == 2 and len(plog.skips) == 1

    def test_every_report_respects_crossing_cap(self):
        for r in analyze_corpus(self._records(), validate=True):
            assert r.crossings.C <= r.bounds.crossing_cap

    def test_validation_raises(self, t1, monkeypatch):
        from deptree import corpus

        monkeypatch.setattr(corpus, "bound_violations", lambda *a: ["forced"])
        with pytest.raises(BoundViolation):
            analyze_tree("x", t1, validate=True)

    def test_executor_keeps_order(self):
        from concurrent.futures import ProcessPoolExecutor

        serial = list(analyze_corpus(self._records()))
        with ProcessPoolExecutor(2) as pool:
            assert list(analyze_corpus(self._records(), executor=pool)) == serial


class TestAggregate:
    def test_two_pairs(self):
        records, _ = parse(conllu((2, 0), (0, 1)))
        rows = aggregate_by_length(analyze_corpus(records))
        assert len(rows) == 1 and rows[0]["n"] == 2 and rows[0]["sentences"] == 2 and rows[0]["mean_d"] == 1

    def test_single_t1(self, t1):
        rows = aggregate_by_length([analyze_tree("t1", t1)])
        assert rows == [
            {
                "n": 9,
                "sentences": 1,
                "mean_d": Fraction(11, 8),
                "mean_d2": Fraction(17, 8),
                "var_k": Fraction(68, 81),
                "mean_k2": Fraction(4),
                "C": Fraction(0),
                "mean_d_over_E_d": Fraction(33, 80),
            }
        ]

    def test_empty(self):
        assert aggregate_by_length([]) == []

    def test_sorted_by_n(self):
        records, _ = parse(conllu((0, 1, 1, 1), (2, 0), (0, 1, 2)))
        assert [row["n"] for row in aggregate_by_length(analyze_corpus(records))] == [2, 3, 4]


class TestRendering:
    @pytest.mark.parametrize(
        "value, text",
        [(Fraction(11, 8), "1.375"), (Fraction(10, 3), "3.33333333333"), (Fraction(68, 81), "0.839506172840"),
         (Fraction(9), "9"), (3, "3"), (None, "NA"), (True, "true"), (0.5, "0.5")],
    )
    def test_decimal(self, value, text):
        assert decimal_str(value) == text

    def test_csv_sections(self, t1):
        text = render_csv([analyze_tree("t1", t1)], aggregate_by_length([analyze_tree("t1", t1)]))
        head, agg = text.split("\n\n")
        assert head.splitlines()[1].startswith("t1,9,4,")
        assert agg.splitlines()[1] == "9,1,1.375,2.125,0.839506172840,4,0,0.4125"
