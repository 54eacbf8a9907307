"""GeoJSON (RFC 7946) FeatureCollection schema for independent validation.

Structural rules are enforced with jsonschema; coordinate ranges, which the
official schema leaves unchecked, are verified by validate_geojson().
"""

from __future__ import annotations

import jsonschema

_POSITION = {
    "type": "array",
    "minItems": 2,
    "maxItems": 3,
    "items": {"type": "number"},
}

FEATURE_COLLECTION_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "GeoJSON FeatureCollection",
    "type": "object",
    "required": ["type", "features"],
    "properties": {
        "type": {"const": "FeatureCollection"},
        "features": {"type": "array", "items": {"$ref": "#/definitions/feature"}},
        "bbox": {"$ref": "#/definitions/bbox"},
    },
    "definitions": {
        "bbox": {"type": "array", "minItems": 4, "items": {"type": "number"}},
        "position": _POSITION,
        "geometry": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["type", "coordinates"],
                    "properties": {
                        "type": {"const": "Point"},
                        "coordinates": {"$ref": "#/definitions/position"},
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "coordinates"],
                    "properties": {
                        "type": {"const": "MultiPoint"},
                        "coordinates": {
                            "type": "array",
                            "items": {"$ref": "#/definitions/position"},
                        },
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "coordinates"],
                    "properties": {
                        "type": {"const": "LineString"},
                        "coordinates": {
                            "type": "array",
                            "minItems": 2,
                            "items": {"$ref": "#/definitions/position"},
                        },
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "coordinates"],
                    "properties": {
                        "type": {"const": "MultiLineString"},
                        "coordinates": {
                            "type": "array",
                            "items": {
                                "type": "array",
                                "minItems": 2,
                                "items": {"$ref": "#/definitions/position"},
                            },
                        },
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "coordinates"],
                    "properties": {
                        "type": {"const": "Polygon"},
                        "coordinates": {
                            "type": "array",
                            "items": {
                                "type": "array",
                                "minItems": 4,
                                "items": {"$ref": "#/definitions/position"},
                            },
                        },
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "coordinates"],
                    "properties": {
                        "type": {"const": "MultiPolygon"},
                        "coordinates": {
                            "type": "array",
                            "items": {
                                "type": "array",
                                "items": {
                                    "type": "array",
                                    "minItems": 4,
                                    "items": {"$ref": "#/definitions/position"},
                                },
                            },
                        },
                    },
                },
            ]
        },
        "feature": {
            "type": "object",
            "required": ["type", "geometry", "properties"],
            "properties": {
                "type": {"const": "Feature"},
                "geometry": {
                    "oneOf": [{"type": "null"}, {"$ref": "#/definitions/geometry"}]
                },
                "properties": {"oneOf": [{"type": "null"}, {"type": "object"}]},
                "id": {"type": ["string", "number"]},
            },
        },
    },
}


def _positions(geometry: dict):
    kind = geometry["type"]
    coordinates = geometry["coordinates"]
    if kind == "Point":
        yield coordinates
    elif kind in ("MultiPoint", "LineString"):
        yield from coordinates
    elif kind in ("MultiLineString", "Polygon"):
        for part in coordinates:
            yield from part
    elif kind == "MultiPolygon":
        for polygon in coordinates:
            for ring in polygon:
                yield from ring


def validate_geojson(document: dict) -> None:
    """Raise if the document is not a valid RFC 7946 FeatureCollection."""
    jsonschema.validate(instance=document, schema=FEATURE_COLLECTION_SCHEMA)
    for feature in document["features"]:
        geometry = feature["geometry"]
        if geometry is None:
            continue
        for position in _positions(geometry):
            lon, lat = position[0], position[1]
            if not -180.0 <= lon <= 180.0:
                raise ValueError(f"longitude out of range: {lon}")
            if not -90.0 <= lat <= 90.0:
                raise ValueError(f"latitude out of range: {lat}")
