//! Hardness constructions as certified instance generators.
