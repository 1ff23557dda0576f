# Graphs, matrices, polynomials and finite fields
