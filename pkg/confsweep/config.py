# Config from env
from typing import Dict
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, AliasChoices


class Settings(BaseSettings):
    # Run settings via Pydantic

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore",
        env_file=".env",
    )

    jobs: int = Field(default=1, ge=1, validation_alias=AliasChoices("CONFSWEEP_JOBS", "JOBS"))
    split_depth: int = Field(default=2, ge=0, validation_alias=AliasChoices("CONFSWEEP_SPLIT_DEPTH", "SPLIT_DEPTH"))
    log_level: str = Field(default="INFO", validation_alias=AliasChoices("CONFSWEEP_LOG_LEVEL", "LOG_LEVEL"))
    progress_every: int = Field(default=50_000, ge=1, validation_alias=AliasChoices("CONFSWEEP_PROGRESS_EVERY"))
    visited_limit: int = Field(default=2_000_000, ge=1, validation_alias=AliasChoices("CONFSWEEP_VISITED_LIMIT"))
    oracle_limit_k3: int = Field(default=10, validation_alias=AliasChoices("CONFSWEEP_ORACLE_LIMIT_K3"))
    oracle_limit_k4: int = Field(default=13, validation_alias=AliasChoices("CONFSWEEP_ORACLE_LIMIT_K4"))

    @property
    def oracle_limits(self) -> Dict[int, int]:
        # Largest n the brute-force oracle accepts per k
        return {3: self.oracle_limit_k3, 4: self.oracle_limit_k4}


settings = Settings()
