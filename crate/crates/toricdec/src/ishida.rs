//! Zariski 1-forms toolkit (placeholder while the engine is built).
