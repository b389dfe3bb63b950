import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

class Settings:
    # =========================================================================
    # 1. ORACLE DEFAULTS (overridden per scenario by the "oracle" block)
    # =========================================================================
    # Geometric decay applied to legal/organisation costs of AI and hybrid tasks
    AUTOMATION_RATE = float(os.getenv("AUTOMATION_RATE", 0.0))

    # Royalty adjustment band and step for the single-step rule
    ROYALTY_MIN = float(os.getenv("ROYALTY_MIN", 0.0))
    ROYALTY_MAX = float(os.getenv("ROYALTY_MAX", 1.0))
    ROYALTY_STEP = float(os.getenv("ROYALTY_STEP", 0.05))

    # Exponent of the provision-probability power law
    PROVISION_SHARPNESS = float(os.getenv("PROVISION_SHARPNESS", 2.0))

    # =========================================================================
    # 2. LEDGER SETTINGS
    # =========================================================================
    # Any hashlib algorithm with a 32-byte digest (sha256, sha3_256, blake2s)
    LEDGER_DIGEST = os.getenv("LEDGER_DIGEST", "sha256")

    # =========================================================================
    # 3. OUTPUT SETTINGS
    # =========================================================================
    TABLE_DECIMALS = int(os.getenv("TABLE_DECIMALS", 6))

    # =========================================================================
    # 4. CURVE SETTINGS
    # =========================================================================
    # Value-by-level curve: base value at level 1 and CEO-to-worker ratios
    CURVE_BASE_VALUE = float(os.getenv("CURVE_BASE_VALUE", 10.0))
    CURVE_RATIO_TYPICAL = float(os.getenv("CURVE_RATIO_TYPICAL", 10.0))
    CURVE_RATIO_EXPECTED = float(os.getenv("CURVE_RATIO_EXPECTED", 5.0))
    CURVE_RATIO_IDEAL = float(os.getenv("CURVE_RATIO_IDEAL", 2.0))

    # Productivity curve: value domain is [0, CURVE_DOMAIN_MAX]
    CURVE_DOMAIN_MAX = float(os.getenv("CURVE_DOMAIN_MAX", 10.0))
    FITNESS_TYPICAL = float(os.getenv("FITNESS_TYPICAL", 1.0))
    FITNESS_EXPECTED = float(os.getenv("FITNESS_EXPECTED", 2.0))

# Instantiate simple singleton for easy import
settings = Settings()
