"""Core module - enums, exceptions, schemas, interfaces and helpers."""
