namespace gf {}
