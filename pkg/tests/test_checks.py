import pytest
import graphroot.checks as op


def test_check_positive_integer():
    with pytest.raises(ValueError):
        op._check_positive_integer("some key", -1)
    with pytest.raises(ValueError):
        op._check_positive_integer("some key", 0)
    with pytest.raises(ValueError):
        op._check_positive_integer("some key", 1.0)
    with pytest.raises(ValueError):
        op._check_positive_integer("some key", True)

    assert op._check_positive_integer("some key", 1) is None


def test_check_positive_integer_inclusive():
    with pytest.raises(ValueError):
        op._check_positive_integer_inclusive("some key", -1)
    with pytest.raises(ValueError):
        op._check_positive_integer_inclusive("some key", 1.0)

    assert op._check_positive_integer_inclusive("some key", 1) is None
    assert op._check_positive_integer_inclusive("some key", 0) is None


def test_check_fraction():
    with pytest.raises(ValueError):
        op._check_fraction("some key", -0.1)
    with pytest.raises(ValueError):
        op._check_fraction("some key", 1.5)
    with pytest.raises(ValueError):
        op._check_fraction("some key", "half")

    assert op._check_fraction("some key", 0) is None
    assert op._check_fraction("some key", 0.5) is None
    assert op._check_fraction("some key", 1.0) is None


def test_check_bool_type():
    with pytest.raises(ValueError):
        op._check_bool_type("some key", "invalid")

    assert op._check_bool_type("some key", True) is None
    assert op._check_bool_type("some key", False) is None


def test_check_vertex_count():
    with pytest.raises(ValueError, match="at least 2"):
        op._check_vertex_count("n_max", 1)

    assert op._check_vertex_count("n_max", 2) is None


def test_run_checks():
    with pytest.raises(ValueError, match="Invalid setting for jobs"):
        op._run_checks({"jobs": 0, "k": 1})
    with pytest.raises(ValueError, match="Invalid setting for k"):
        op._run_checks({"k": -2})

    assert op._run_checks({"k": 0, "unchecked": "anything", "seed": None}) is None


def test_error_hierarchy():
    err = op.GraphParseError("bad record", 7)
    assert isinstance(err, op.GraphError)
    assert isinstance(err, ValueError)
    assert err.line == 7
    assert str(err) == "line 7: bad record"
    assert issubclass(op.OracleCapError, op.ContractError)
    assert not issubclass(op.IntegrityError, ValueError)
