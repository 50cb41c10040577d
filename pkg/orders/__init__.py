# Imaginary quadratic orders and their ideals
