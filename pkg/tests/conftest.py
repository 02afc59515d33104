from quandlekit import linalg

# Re-verify U*M*V == S on every Smith normal form computed anywhere in the suite.
linalg.VERIFY_SNF = True
