from functools import lru_cache
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="QENT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    app_name: str = "qent"
    log_level: str = "WARNING"
    log_json: bool = False

    max_qubits: int = 10
    tolerance: float = 1e-9
    witness_tolerance: float = 1e-7

    epsilon: float = 1e-9
    max_iterations: int = 1000
    branch_cap: int = 4096

    output_format: Literal["text", "json"] = "text"

    fuzz_cases: int = 1000
    fuzz_seed: int = 7
    fuzz_max_qubits: int = 4
    fuzz_max_depth: int = 8
    fuzz_loop_cap: int = 64
    fuzz_workers: int = 1


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
