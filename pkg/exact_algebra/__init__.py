# Exact integer and polynomial algebra package
