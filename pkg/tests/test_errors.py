import pytest

from edgewall import (
    DivergenceError,
    DomainError,
    EdgewallError,
    ProfileParseError,
    SingularEndpointError,
    StabilityError,
    WindowError,
)


def test_hierarchy():
    assert issubclass(DomainError, EdgewallError)
    assert issubclass(DomainError, ValueError)
    assert issubclass(SingularEndpointError, DomainError)
    assert issubclass(WindowError, DomainError)
    for cls in (ProfileParseError, DivergenceError, StabilityError):
        assert issubclass(cls, EdgewallError)


def test_profile_parse_error_carries_line_number():
    err = ProfileParseError("bad float 'x'", line_number=17)
    assert err.line_number == 17
    assert str(err).startswith("line 17: ")


def test_divergence_error_records_step():
    err = DivergenceError(412)
    assert err.step == 412
    assert "412" in str(err)


def test_stability_error_mentions_time_step():
    err = StabilityError(900, 0.25)
    assert err.step == 900
    assert err.dt == 0.25
    message = str(err)
    assert "0.25" in message
    assert "reduce the time step" in message


def test_errors_catchable_as_package_base():
    with pytest.raises(EdgewallError):
        raise WindowError("window off the grid")
