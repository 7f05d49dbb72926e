import os
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv is optional, plain ENVs work too

def _get(name: str, default: str = "") -> str:
    return os.getenv(name, default).strip()

def _get_bool(name: str, default: str = "false") -> bool:
    return _get(name, default).lower() in ("1","true","yes","y","on")

def _get_int(name: str, default: str) -> int:
    return int(_get(name, default))

def _get_int_list(name: str, default: str) -> list:
    return [int(x) for x in _get(name, default).split(",") if x.strip()]

# Static solver limits
STATIC_VERTEX_CAP = _get_int("STATIC_VERTEX_CAP","64")        # max vertices handed to the exact solver
STATIC_MEMO_CAP   = _get_int("STATIC_MEMO_CAP",str(2 ** 24))  # max memo entries per solve

# Audits after every structural update (slow, tests / stress only)
DEBUG_CHECKS = _get_bool("DEBUG_CHECKS","false")

# CLI defaults
DEFAULT_K    = _get_int("DEFAULT_K","4")
DEFAULT_N    = _get_int("DEFAULT_N","20")
DEFAULT_OPS  = _get_int("DEFAULT_OPS","1000")
DEFAULT_SEED = _get_int("DEFAULT_SEED","1")
BENCH_SIZES  = _get_int_list("BENCH_SIZES","1000,10000,100000")

# Misc
REPORT_FILE = _get("REPORT_FILE","runs.json")
LOG_LEVEL   = _get("LOG_LEVEL","INFO").upper()

# Optional integrations
DATABASE_URL       = _get("DATABASE_URL")
TELEGRAM_BOT_TOKEN = _get("TELEGRAM_BOT_TOKEN")
TELEGRAM_CHAT_ID   = _get("TELEGRAM_CHAT_ID")
