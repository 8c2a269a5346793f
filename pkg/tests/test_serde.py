import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from odereduce.errors import InputFormatError
from odereduce.fracpow import companion_2x2
from odereduce.reduction import reduce
from odereduce.serde import (
    dump_json,
    format_complex,
    matrix_payload,
    parse_complex,
    parse_matrix,
    parse_vector,
    reduced_equation_payload,
    trajectory_csv,
)
from odereduce.simulate import Trajectory

finite_floats = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e12, max_value=1e12)


class TestComplexLiterals:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("3", 3 + 0j),
            ("-2.5", -2.5 + 0j),
            ("1+2i", 1 + 2j),
            ("1-2i", 1 - 2j),
            ("0+1i", 1j),
            ("1e-17+2.5e-3i", complex(1e-17, 2.5e-3)),
            (".5-.25i", complex(0.5, -0.25)),
            (" 4 ", 4 + 0j),
        ],
    )
    def test_parse(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "i", "1+i", "2i", "1 + 2i", "abc", "1+2j", "nan", "inf"])
    def test_rejects_malformed(self, text):
        with pytest.raises(InputFormatError):
            parse_complex(text)

    @given(finite_floats, finite_floats)
    @settings(max_examples=200, deadline=None)
    def test_round_trip_exact(self, re_part, im_part):
        z = complex(re_part, im_part)
        assert parse_complex(format_complex(z)) == z

    def test_format_real_drops_imag(self):
        assert format_complex(3.0 + 0j) == "3.0"

    def test_format_signs(self):
        assert format_complex(1 + 2j) == "1.0+2.0i"
        assert format_complex(1 - 2j) == "1.0-2.0i"

    def test_negative_zero_normalized(self):
        assert format_complex(complex(-0.0, 0.0)) == "0.0"
        assert format_complex(complex(1.0, -0.0)) == "1.0"


class TestMatrixPayload:
    def test_round_trip_identical(self, rng):
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        payload = matrix_payload(m)
        again = matrix_payload(parse_matrix(payload))
        assert payload == again

    def test_parse_rejects_bad_shape(self):
        with pytest.raises(InputFormatError):
            parse_matrix({"n": 2, "entries": [["1", "2"]]})
        with pytest.raises(InputFormatError):
            parse_matrix({"n": 2, "entries": [["1", "2"], ["3"]]})
        with pytest.raises(InputFormatError):
            parse_matrix({"n": 0, "entries": []})
        with pytest.raises(InputFormatError):
            parse_matrix({"entries": [["1"]]})
        with pytest.raises(InputFormatError):
            parse_matrix([["1"]])

    def test_vector_accepts_string_form(self):
        v = parse_vector("1,0+1i, 2.5")
        assert np.array_equal(v, np.array([1.0, 1j, 2.5]))

    def test_vector_length_checked(self):
        with pytest.raises(Exception):
            parse_vector(["1", "2"], 3)


class TestReducedEquationPayload:
    def test_structure(self):
        eq = reduce(companion_2x2(2.0))
        payload = reduced_equation_payload(eq)
        assert payload["n"] == 2
        assert payload["a"][0] == "4.0"
        assert len(payload["operators"]) == 2
        assert payload["rhs_operator"] == payload["operators"][1]
        # the payload is valid JSON end to end
        json.loads(dump_json(payload))


class TestTrajectoryCsv:
    def test_header_and_digits(self):
        t = np.array([0.0, 0.5, 1.0])
        states = np.array([[1.0 + 2.0j, 0.0], [0.25, 1e-17 + 0j], [-1.0, 3.0 - 4.0j]])
        csv = trajectory_csv(Trajectory(t=t, states=states, h=0.5))
        lines = csv.strip().split("\n")
        assert lines[0] == "t,re(x1),im(x1),re(x2),im(x2)"
        assert lines[1].split(",")[1] == "1"
        assert lines[1].split(",")[2] == "2"
        # 17 significant digits survive
        assert float(lines[2].split(",")[3]) == 1e-17
        assert len(lines) == 4

    def test_values_parse_back(self):
        t = np.arange(0.0, 1.0, 0.25)
        states = np.exp(1j * t)[:, None]
        csv = trajectory_csv(Trajectory(t=t, states=states, h=0.25))
        for line, (tt, z) in zip(csv.strip().split("\n")[1:], zip(t, states[:, 0])):
            cells = [float(c) for c in line.split(",")]
            assert cells[0] == pytest.approx(tt, abs=1e-16)
            assert cells[1] == pytest.approx(z.real, abs=1e-16)
            assert cells[2] == pytest.approx(z.imag, abs=1e-16)


class TestDeterminism:
    def test_dump_json_stable(self):
        payload = matrix_payload(companion_2x2(1.5))
        assert dump_json(payload) == dump_json(matrix_payload(companion_2x2(1.5)))

    def test_dump_json_rejects_nan(self):
        with pytest.raises(ValueError):
            dump_json({"x": float("nan")})
