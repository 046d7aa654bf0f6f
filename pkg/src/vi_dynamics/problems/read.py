'''Read problem definitions from JSON documents.

Layout::

    {
      "dimension": 3,
      "operator": {"kind": "linear", "matrix": [[...], [...], [...]]},
      "set": {"kind": "ball", "params": {"center": [0, 0, 0], "radius": 1}},
      "reference_solution": [0, 0, 0]
    }

Operator kinds are ``linear`` (row-major ``matrix``), ``identity`` and
``constant`` (``value``). Set kinds are ``ball`` (``center``, ``radius``),
``box`` (``lower``, ``upper``), ``simplex`` (``scale``) and ``interval``
(``lo``, ``hi``).
'''

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .._errors import ConfigurationError, DefinitionError
from .instance import ProblemInstance
from .operators import OperatorSpec, constant_operator, identity_operator, linear_operator
from .sets import Ball, Box, FeasibleSet, Interval, Simplex


def _operator_from_dict(spec: dict[str, Any], dimension: int) -> OperatorSpec:
    kind = spec.get('kind')
    if kind == 'linear':
        if 'matrix' not in spec:
            raise DefinitionError('linear operator needs "matrix"')
        return linear_operator(spec['matrix'], name=spec.get('name', ''))
    if kind == 'identity':
        return identity_operator(dimension)
    if kind == 'constant':
        if 'value' not in spec:
            raise DefinitionError('constant operator needs "value"')
        return constant_operator(spec['value'])
    raise DefinitionError(f'unknown operator kind: {kind!r}')


def _set_from_dict(spec: dict[str, Any], dimension: int) -> FeasibleSet:
    kind = spec.get('kind')
    params = spec.get('params', {})
    try:
        if kind == 'ball':
            return Ball(center=params.get('center', [0.0] * dimension), radius=float(params.get('radius', 1.0)))
        if kind == 'box':
            return Box(lower=params['lower'], upper=params['upper'])
        if kind == 'simplex':
            return Simplex(dim=dimension, scale=float(params.get('scale', 1.0)))
        if kind == 'interval':
            return Interval(lo=float(params['lo']), hi=float(params['hi']))
    except KeyError as e:
        raise DefinitionError(f'{kind} set is missing parameter {e.args[0]!r}') from None
    raise DefinitionError(f'unknown set kind: {kind!r}')


def problem_from_dict(doc: dict[str, Any], name: str = '') -> ProblemInstance:
    '''Build a :class:`ProblemInstance` from an already parsed document.

    Raises:
        DefinitionError: If a section is missing or malformed, or the
            declared dimension disagrees with the operator or set.
    '''
    for key in ('dimension', 'operator', 'set'):
        if key not in doc:
            raise DefinitionError(f'problem definition is missing {key!r}')
    dimension = int(doc['dimension'])
    operator = _operator_from_dict(doc['operator'], dimension)
    feasible = _set_from_dict(doc['set'], dimension)
    if operator.dimension != dimension:
        raise DefinitionError(f'declared dimension {dimension} != operator dimension {operator.dimension}')
    return ProblemInstance(
        operator=operator,
        set=feasible,
        reference_solution=doc.get('reference_solution'),
        name=name or doc.get('name', ''),
    )


def load_problem(path: Path | str) -> ProblemInstance:
    '''Read a problem definition file.

    Args:
        path: Path to a JSON document in the layout above.

    Returns:
        The validated problem, named after the file stem unless the
        document carries a ``name``.

    Raises:
        ConfigurationError: If the file does not exist or is not JSON.
        DefinitionError: If its content is malformed.
    '''
    p = Path(path)
    if not p.exists():
        raise ConfigurationError(f'problem file not found: {p}', key='problem')
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ConfigurationError(f'{p} is not valid JSON: {e}', key='problem') from None
    return problem_from_dict(doc, name=doc.get('name', p.stem))
