import pytest

from lehmerdefect.families import SUPPORTED_N, UnsupportedNError, enumerate_families
from lehmerdefect.harness import (
    CheckpointMismatchError,
    audit_changes,
    search_defective,
    search_with_checkpoint,
    verify_table,
    _chunks,
)
from lehmerdefect.pairs import LehmerPair, validate_ab
from lehmerdefect.primdiv import is_defective


class TestSearch:
    def test_tiny_bound_empty(self):
        assert search_defective(5, 3).pairs == ()

    def test_bound_7_index_5(self):
        assert search_defective(5, 7).pairs == (
            (1, -7),
            (1, 5),
            (3, -5),
            (5, -3),
            (7, -5),
        )

    def test_bound_5_index_12(self):
        assert search_defective(12, 5).pairs == ((1, 5), (5, 1))

    def test_bound_20_index_8(self):
        assert search_defective(8, 20).pairs == (
            (1, -7),
            (2, -10),
            (3, -17),
            (7, -1),
            (10, -2),
            (17, -3),
        )

    def test_matches_validate_ab_grid(self):
        # The scan inlines validity; pin it to the reference validator.
        bound, n = 40, 5
        expected = []
        for a in range(1, bound + 1):
            for b in range(-bound, bound + 1):
                pair = validate_ab(a, b)
                if isinstance(pair, LehmerPair) and is_defective(pair, n):
                    expected.append((a, b))
        assert search_defective(n, bound).pairs == tuple(expected)

    def test_ordering_and_canonical_closure(self):
        result = search_defective(6, 120)
        assert list(result.pairs) == sorted(result.pairs)
        assert len(set(result.pairs)) == len(result.pairs)
        for a, b in result.pairs:
            assert a > 0
            assert (-a, -b) not in result.pairs

    @pytest.mark.parametrize("n", SUPPORTED_N)
    def test_nested_bounds(self, n):
        small = set(search_defective(n, 60).pairs)
        large = set(search_defective(n, 150).pairs)
        assert small <= large
        for a, b in large - small:
            assert max(abs(a), abs(b)) > 60

    def test_jobs_do_not_change_output(self):
        serial = search_defective(5, 150, jobs=1)
        parallel = search_defective(5, 150, jobs=3)
        assert serial == parallel

    def test_bad_args(self):
        with pytest.raises(UnsupportedNError):
            search_defective(7, 10)
        with pytest.raises(ValueError):
            search_defective(5, 0)


class TestVerify:
    @pytest.mark.parametrize("n", [3, 5, 6, 8, 10, 12])
    def test_exact_agreement_at_200(self, n):
        report = verify_table(n, 200)
        assert report.exact_agreement
        assert report.matched_count == len(enumerate_families(n, 200))
        assert report.matched_count == len(search_defective(n, 200).pairs)

    def test_n4_surfaces_the_missing_pair(self):
        report = verify_table(4, 10)
        assert report.missing_from_table == ((6, 2),)
        assert report.table_failures == ()
        assert report.equivalent_duplicates == ()
        assert not report.exact_agreement

    def test_n10_matches_swapped_n5(self):
        ten = set(search_defective(10, 200).pairs)
        five = set(search_defective(5, 200).pairs)
        swapped = {(b, a) if b > 0 else (-b, -a) for a, b in five}
        assert ten == swapped


class TestCheckpoint:
    def test_resume_matches_uninterrupted(self, tmp_path):
        n, bound = 5, 150
        plain = search_defective(n, bound)

        fresh = tmp_path / "fresh.ckpt"
        full = search_with_checkpoint(n, bound, fresh)
        assert full == plain

        broken = tmp_path / "broken.ckpt"
        partial = search_with_checkpoint(n, bound, broken, stop_after_chunks=2)
        assert partial is None
        chunk_lines = [l for l in broken.read_text().splitlines() if not l.startswith("#")]
        assert 0 < len(chunk_lines) < len(_chunks(bound))

        resumed = search_with_checkpoint(n, bound, broken)
        assert resumed == plain
        assert broken.read_text() == fresh.read_text()
        hits_broken = (tmp_path / "broken.ckpt.hits").read_text()
        hits_fresh = (tmp_path / "fresh.ckpt.hits").read_text()
        assert hits_broken == hits_fresh

    def test_state_file_format(self, tmp_path):
        path = tmp_path / "fmt.ckpt"
        result = search_with_checkpoint(3, 64, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "# 3\t64"
        lines = lines[1:]
        assert lines, "at least one chunk line"
        total = 0
        for line, (lo, hi) in zip(lines, _chunks(64)):
            f = line.split("\t")
            assert len(f) == 4
            assert (int(f[0]), int(f[1]), int(f[2])) == (3, lo, hi)
            total += int(f[3])
        assert total == len(result.pairs)
        hit_lines = (tmp_path / "fmt.ckpt.hits").read_text().splitlines()
        assert [tuple(int(x) for x in l.split("\t")) for l in hit_lines] == list(
            result.pairs
        )

    def test_truncated_hits_are_recovered(self, tmp_path):
        path = tmp_path / "trunc.ckpt"
        search_with_checkpoint(5, 150, path, stop_after_chunks=3)
        hits_path = tmp_path / "trunc.ckpt.hits"
        # Drop the last hit line: the final state line loses its commit.
        lines = hits_path.read_text().splitlines(keepends=True)
        assert lines
        hits_path.write_text("".join(lines[:-1]))
        resumed = search_with_checkpoint(5, 150, path)
        assert resumed == search_defective(5, 150)

    def test_mismatched_checkpoint_rejected(self, tmp_path):
        path = tmp_path / "clash.ckpt"
        search_with_checkpoint(5, 150, path, stop_after_chunks=1)
        with pytest.raises(CheckpointMismatchError):
            search_with_checkpoint(3, 150, path)
        with pytest.raises(CheckpointMismatchError):
            search_with_checkpoint(5, 3000, path)


class TestAuditChanges:
    def test_all_items_pass(self):
        items = audit_changes()
        assert [i.change_id for i in items] == [
            "n=3(1)",
            "n=4(1)",
            "n=4(2)",
            "n=5(1)",
            "n=5(2)",
            "n=6(1)",
            "n=6(2)",
            "n=8",
            "n=10(1)",
            "n=10(2)",
            "n=12(2)",
            "n=12(3)",
        ]
        for item in items:
            assert item.passed, f"{item.change_id}: {item.evidence}"
            assert item.evidence

    def test_key_evidence_strings(self):
        by_id = {i.change_id: i for i in audit_changes()}
        assert "ZeroA" in by_id["n=3(1)"].evidence
        assert "DegenerateRatio(-1, -1)" in by_id["n=4(1)"].evidence
        assert "duplicate of N5_PSI(k=0,eps=1)" in by_id["n=5(2)"].evidence
        assert "(1,5)" in by_id["n=12(3)"].evidence.replace(" ", "")
