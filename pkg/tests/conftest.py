# keeps this directory importable so the tests can share the oracle helpers
