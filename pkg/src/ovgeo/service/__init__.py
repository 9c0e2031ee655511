"""HTTP service wrapper around the verification sessions."""
