# Presence of this file puts the tests directory on sys.path so the shared
# geometry generators in geom_helpers are importable from every test module.
