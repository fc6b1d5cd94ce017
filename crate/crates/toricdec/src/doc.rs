//! Structured document formats (placeholder while the engine is built).
