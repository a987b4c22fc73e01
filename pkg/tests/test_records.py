import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meertens.expr import MAX_RESULT_BITS, ExpressionError, evaluate
from meertens.records import KINDS, OutputRecord, read_csv, read_jsonl, write_csv, write_jsonl

scalars = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(min_value=-(2**200), max_value=2**200),
    st.text(max_size=20),
)
payloads = st.dictionaries(
    st.text(alphabet="abcdefghijklmnopqrstuvwxyz_", min_size=1, max_size=8),
    st.one_of(scalars, st.lists(st.integers(0, 10**30), max_size=5), st.dictionaries(st.text(max_size=4), st.integers(), max_size=3)),
    max_size=6,
)
records = st.builds(OutputRecord, st.sampled_from(KINDS), payloads)


class TestRecords:
    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            OutputRecord("nope", {})

    @settings(deadline=None)
    @given(st.lists(records, max_size=6))
    def test_jsonl_round_trip(self, recs):
        buf = io.StringIO()
        write_jsonl(recs, buf)
        lines = buf.getvalue().splitlines()
        assert len(lines) == len(recs)
        assert read_jsonl(buf.getvalue()) == recs
        # each line stands alone
        assert [OutputRecord.from_json(line) for line in lines] == recs

    @settings(deadline=None)
    @given(st.lists(records, max_size=6))
    def test_csv_round_trip(self, recs):
        buf = io.StringIO()
        write_csv(recs, buf)
        assert read_csv(buf.getvalue()) == recs

    def test_csv_header(self):
        buf = io.StringIO()
        write_csv([OutputRecord("finding", {"value": 6}), OutputRecord("bound", {"base": 5})], buf)
        assert buf.getvalue().splitlines() == ["schema_version,kind,value,base", "1,finding,6,", "1,bound,,5"]

    def test_big_integers_survive(self):
        v = 2**100_000 + 1
        buf = io.StringIO()
        write_jsonl([OutputRecord("witness", {"value": v})], buf)
        assert read_jsonl(buf.getvalue())[0].payload["value"] == v


class TestExpressions:
    def test_examples(self):
        assert evaluate("81312000") == 81312000
        assert evaluate("2^8*3*5^3*7*11^2") == 81312000
        assert evaluate("2^2^3") == 256
        assert evaluate("(2^100*3^96-96)") == 2**100 * 3**96 - 96
        assert evaluate(" 2 ^ 31 ") == 2**31
        assert evaluate("2^2^16") == 2**65536

    @pytest.mark.parametrize("bad", ["", "2^", "2**3", "abc", "(1", "1)", "3-5", "2^-1", "1.5"])
    def test_parse_errors(self, bad):
        with pytest.raises(ExpressionError):
            evaluate(bad)

    def test_refuses_astronomical(self):
        with pytest.raises(ExpressionError):
            evaluate("2^2^64")
        assert MAX_RESULT_BITS >= 2**16

    @given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 20))
    def test_matches_python(self, a, b, c):
        assert evaluate(f"{a}+{b}*{a}^{c % 4}") == a + b * a ** (c % 4)
        assert evaluate(f"({a}+{b})*{c}") == (a + b) * c
