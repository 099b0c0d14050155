//! Irrelevant-vertex machinery (stub).
