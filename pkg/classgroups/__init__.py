# Form class groups of level N
