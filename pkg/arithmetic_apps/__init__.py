# Arithmetic applications of the class invariants
