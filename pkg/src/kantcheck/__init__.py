"""Model checker for Kantian causal agency models."""
