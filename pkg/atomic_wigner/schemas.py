# -*- coding: UTF-8 -*-
"""
JSON schemas for the documents atomic_wigner reads and writes, and a decorator
that refuses documents which do not conform.
"""
from functools import wraps

from jsonschema import validate, ValidationError, draft4_format_checker

from .constants import const
from .std_logger import get_logger

logger = get_logger(__name__, loglevel=const.LOG_LEVEL)


_COMPLEX = {"type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2}

_VECTOR3 = {"type": "array",
            "items": {"type": "number"},
            "minItems": 3,
            "maxItems": 3}

SCENE_SCHEMA = { "$schema": "http://json-schema.org/draft-04/schema#",
                 "type": "object",
                 "properties": {
                     "version": {"type": "integer", "minimum": 1},
                     "representation": {"enum": ["position", "momentum"]},
                     "colormap": {
                         "type": "object",
                         "properties": {
                             "name": {"type": "string"},
                             "range": {"type": "array",
                                       "items": {"type": "number"},
                                       "minItems": 2,
                                       "maxItems": 2}
                         },
                         "required": ["name", "range"]
                     },
                     "plane": {
                         "type": "object",
                         "properties": {
                             "axis": {"enum": ["x", "y", "z"]},
                             "value": {"type": "number"}
                         },
                         "required": ["axis", "value"]
                     },
                     "glyphs": {
                         "type": "array",
                         "items": {
                             "type": "object",
                             "properties": {
                                 "center": _VECTOR3,
                                 "radius": {"type": "number", "minimum": 0},
                                 "opacity": {"type": "number", "minimum": 0, "maximum": 1},
                                 "texture": {
                                     "type": "object",
                                     "properties": {
                                         "n_theta": {"type": "integer", "minimum": 2},
                                         "n_phi": {"type": "integer", "minimum": 2},
                                         "values": {"type": "array", "items": {"type": "number"}}
                                     },
                                     "required": ["n_theta", "n_phi", "values"]
                                 },
                                 "arrow": {"oneOf": [_VECTOR3, {"type": "null"}]}
                             },
                             "required": ["center", "radius", "opacity", "texture", "arrow"]
                         }
                     }
                 },
                 "required": ["version", "colormap", "plane", "glyphs"]
               }

STATE_SCHEMA = { "$schema": "http://json-schema.org/draft-04/schema#",
                 "type": "object",
                 "properties": {
                     "signature": {
                         "type": "array",
                         "minItems": 1,
                         "items": {
                             "type": "object",
                             "properties": {
                                 "kind": {"enum": ["mode", "spin"]},
                                 "electron": {"type": "integer", "minimum": 1},
                                 "axis": {"enum": ["x", "y", "z"]}
                             },
                             "required": ["kind", "electron"]
                         }
                     },
                     "terms": {
                         "type": "array",
                         "minItems": 1,
                         "items": {
                             "type": "object",
                             "properties": {
                                 "amplitude": _COMPLEX,
                                 "ket": {
                                     "type": "array",
                                     "items": {
                                         "oneOf": [
                                             {"enum": ["up", "down"]},
                                             {"type": "object",
                                              "properties": {
                                                  "fock": {"type": "integer", "minimum": 0},
                                                  "displacement": _COMPLEX
                                              },
                                              "required": ["fock"]}
                                         ]
                                     }
                                 }
                             },
                             "required": ["amplitude", "ket"]
                         }
                     }
                 },
                 "required": ["signature", "terms"]
               }


class DocumentError(ValueError):
    """A JSON document does not match the schema it is read with"""
    pass


def validate_input(schema):
    """Ensure that the document handed to the decorated function conforms to a JSON schema

    The document is the first positional argument. Mode factors must name an axis
    and every ket must carry one entry per signature factor; those two rules are
    checked here too when the schema describes a state file.

    :param schema: The JSON schema the document must conform to
    :type schema: Dictionary
    """
    def real_decorator(func):
        @wraps(func)
        def inner(document, *args, **kwargs):
            try:
                validate(instance=document, schema=schema, format_checker=draft4_format_checker)
            except ValidationError as doh:
                logger.error(doh)
                error = 'Input does not match schema: {}'.format(doh.message)
                raise DocumentError(error)
            if schema is STATE_SCHEMA:
                _check_state_shape(document)
            return func(document, *args, **kwargs)
        return inner
    return real_decorator


def _check_state_shape(document):
    width = len(document['signature'])
    for item in document['signature']:
        if item['kind'] == 'mode' and 'axis' not in item:
            raise DocumentError('Mode factor of electron {} has no axis'.format(item['electron']))
    for index, term in enumerate(document['terms']):
        if len(term['ket']) != width:
            error = 'Term {} has {} ket entries, the signature has {}'.format(index, len(term['ket']), width)
            raise DocumentError(error)
