# Modular functions: Siegel products and class invariants
