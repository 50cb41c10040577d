# On-disk cache package
