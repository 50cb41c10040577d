# Configuration, errors, JSON helpers and reference tables
