# Report models for polynomials, checks and certificates
