from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="HELMHOLTZ_", extra="ignore")

    log_level: str = "INFO"
    jobs: int = 1
    output_dir: str = "out"
    plot: bool = True


settings = Settings()
