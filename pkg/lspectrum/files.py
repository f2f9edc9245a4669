"""Reading matrix and operator files, writing JSON reports."""
import json
import sys

from rest_framework import serializers

from .exceptions import InputError
from .preserver import LinearMap3
from .serializers import MatrixFileSerializer, OperatorFileSerializer
from .smallmat import Mat3


def _reject_constant(name):
    raise InputError(f"non-finite number {name} in input")


def load_json(path):
    """Parse a JSON file (``-`` reads standard input), rejecting NaN and Infinity."""
    try:
        if path == '-':
            text = sys.stdin.read()
        else:
            with open(path, encoding='utf-8') as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _validated(serializer_class, data, path):
    serializer = serializer_class(data=data)
    try:
        serializer.is_valid(raise_exception=True)
    except serializers.ValidationError as exc:
        raise InputError(f"{path}: {json.dumps(exc.detail)}") from exc
    return serializer.validated_data


def read_matrix(path) -> Mat3:
    data = _validated(MatrixFileSerializer, load_json(path), path)
    return Mat3(data['matrix'])


def read_operator(path) -> LinearMap3:
    data = _validated(OperatorFileSerializer, load_json(path), path)
    return LinearMap3(data['operator'])


def dumps(data) -> str:
    return json.dumps(data, indent=2, allow_nan=False)
