"""Multi-party function secret sharing from DDH."""
