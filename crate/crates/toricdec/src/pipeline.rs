//! Decomposition pipeline (placeholder while the engine is built).
