from pydantic_settings import BaseSettings
import os
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    # Engine settings
    ENGINE_VERSION: str = os.getenv("ENGINE_VERSION", "1.0.0")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    # Window settings
    DEFAULT_T_ORDER: int = int(os.getenv("DEFAULT_T_ORDER", "3"))
    DEFAULT_QT_DEGREE: int = int(os.getenv("DEFAULT_QT_DEGREE", "8"))
    DEFAULT_U_WINDOW: int = int(os.getenv("DEFAULT_U_WINDOW", "3"))
    DEFAULT_P_ORDER: int = int(os.getenv("DEFAULT_P_ORDER", "1"))
    DEFAULT_EXTRA_DEGREE: int = int(os.getenv("DEFAULT_EXTRA_DEGREE", "2"))

    # Runner settings
    DEFAULT_JOBS: int = int(os.getenv("DEFAULT_JOBS", "1"))
    DEFAULT_FORMAT: str = os.getenv("DEFAULT_FORMAT", "json")

    # Cache settings
    QTNO_CACHE_DIR: str = os.getenv(
        "QTNO_CACHE_DIR", os.path.join(os.path.expanduser("~"), ".cache", "qtnekrasov")
    )
    CACHE_ENABLED: bool = os.getenv("CACHE_ENABLED", "true").lower() in ("1", "true", "yes")
    CACHE_FORMAT_VERSION: int = int(os.getenv("CACHE_FORMAT_VERSION", "1"))

    class Config:
        env_file = ".env"

settings = Settings()
