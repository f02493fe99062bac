import math

import api.data.Constants

class CheckRecord:
    """One checked identity or inequality: `lhs relation rhs`."""
    def __init__(self, name, lhs, rhs, relation, passed, parameters=None, witness=None):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.relation = relation
        self.passed = bool(passed)
        self.parameters = dict(parameters or {})
        self.witness = witness

    def as_dict(self):
        return {
            "name": self.name,
            "parameters": self.parameters,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "relation": self.relation,
            "witness": self.witness,
            "pass": self.passed
        }

    def __repr__(self):
        return "{}: {} {} {} [{}]".format(self.name, self.lhs, self.relation, self.rhs, "pass" if self.passed else "FAIL")


def _jsonable(value):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    try:
        return float(value)
    except TypeError:
        return str(value)


class CheckReport:
    """Ordered collection of check records for one graph."""
    def __init__(self, graph=None):
        self._graph_hash = graph.get_hash() if graph is not None else None
        self._records = []

    def get_records(self):
        return self._records

    def get_failures(self):
        return [r for r in self._records if not r.passed]

    def passed(self):
        return not self.get_failures()

    def add(self, record):
        self._records.append(record)
        return record

    def extend(self, other):
        self._records.extend(other.get_records())

    def close(self, name, lhs, rhs, parameters=None, rtol=api.data.Constants.RELATIVE_TOLERANCE,
              atol=api.data.Constants.ABSOLUTE_TOLERANCE, witness=None):
        passed = math.isclose(float(lhs), float(rhs), rel_tol=rtol, abs_tol=atol)
        return self.add(CheckRecord(name, lhs, rhs, "==", passed, parameters, witness))

    def exact(self, name, lhs, rhs, parameters=None, witness=None):
        return self.add(CheckRecord(name, lhs, rhs, "==", lhs == rhs, parameters, witness))

    def at_most(self, name, lhs, rhs, parameters=None, slack=api.data.Constants.RELATIVE_TOLERANCE, witness=None):
        """lhs <= rhs, allowing a relative rounding slack."""
        passed = float(lhs) <= float(rhs) * (1.0 + slack)
        return self.add(CheckRecord(name, lhs, rhs, "<=", passed, parameters, witness))

    def at_least(self, name, lhs, rhs, parameters=None, slack=api.data.Constants.RELATIVE_TOLERANCE, witness=None):
        passed = float(lhs) >= float(rhs) * (1.0 - slack)
        return self.add(CheckRecord(name, lhs, rhs, ">=", passed, parameters, witness))

    def raise_on_failure(self, error_class):
        failures = self.get_failures()
        if failures:
            raise error_class("{} check(s) failed, first: {!r}".format(len(failures), failures[0]), failures)

    def as_dicts(self):
        records = []
        for r in self._records:
            d = r.as_dict()
            d["graph"] = self._graph_hash
            records.append(d)
        return records
