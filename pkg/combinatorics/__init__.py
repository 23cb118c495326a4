# Combinatorics package
