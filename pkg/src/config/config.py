import os
from dotenv import load_dotenv

load_dotenv(override=True)

SCHUR_REGIONS_THREADS = max(1, int(os.getenv("SCHUR_REGIONS_THREADS", "4")))
SCHUR_REGIONS_LOG_LEVEL = os.getenv("SCHUR_REGIONS_LOG_LEVEL", "INFO").upper()
SCHUR_REGIONS_EPS_BOUNDARY = float(os.getenv("SCHUR_REGIONS_EPS_BOUNDARY", "1e-9"))
SCHUR_REGIONS_EPS_SEP = float(os.getenv("SCHUR_REGIONS_EPS_SEP", "1e-8"))
