"""Configuration management using pydantic-settings."""

from typing import Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class ApproxConfig(BaseModel):
    """Parameters of the fixed-direction parallelogram approximation."""

    eps_shave: float = Field(1e-4, gt=0)
    eps_shave_floor: float = Field(1e-13, gt=0)
    eps_shave_factor: float = Field(1e-3, gt=0, lt=1)
    root_tol: float = Field(1e-10, gt=0)
    max_iter: int = Field(200, ge=1)
    ratio_slack: float = Field(1e-3, ge=0)
    residual_tol: float = Field(1e-6, gt=0)
    grid_samples: int = Field(10_000, ge=10)
    contain_tol: float = Field(1e-9, ge=0)


class TransversalConfig(BaseModel):
    """Parameters of the line-transversal direction search."""

    coarse_samples: int = Field(720, ge=1)
    refine_iters: int = Field(60, ge=0)
    contain_tol: float = Field(1e-9, ge=0)


class PierceConfig(BaseModel):
    """Parameters of the end-to-end piercing pipeline."""

    approx: ApproxConfig = Field(default_factory=ApproxConfig)
    transversal: TransversalConfig = Field(default_factory=TransversalConfig)
    contain_tol: float = Field(1e-9, ge=0)
    brute_force_k: int = Field(3, ge=1, le=4)
    max_brute_force_polys: int = Field(40, ge=1, le=64)


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="PIERCE4_",
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"

    # Overrides --seed on every command when set
    seed: Optional[int] = None

    # Tolerances (normalized unit-slab units)
    contain_tol: float = 1e-9
    root_tol: float = 1e-10
    ratio_slack: float = 1e-3
    residual_tol: float = 1e-6

    # Shaving of flat top/bottom supports
    eps_shave: float = 1e-4
    eps_shave_floor: float = 1e-13
    eps_shave_factor: float = 1e-3

    # Root finding
    max_iter: int = 200
    grid_samples: int = 10_000

    # Transversal search
    coarse_samples: int = 720
    refine_iters: int = 60

    # Fallback branch
    brute_force_k: int = 3
    max_brute_force_polys: int = 40

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()

    @property
    def approx_config(self) -> ApproxConfig:
        """Approximation parameters derived from the flat settings."""
        return ApproxConfig(
            eps_shave=self.eps_shave,
            eps_shave_floor=self.eps_shave_floor,
            eps_shave_factor=self.eps_shave_factor,
            root_tol=self.root_tol,
            max_iter=self.max_iter,
            ratio_slack=self.ratio_slack,
            residual_tol=self.residual_tol,
            grid_samples=self.grid_samples,
            contain_tol=self.contain_tol,
        )

    @property
    def transversal_config(self) -> TransversalConfig:
        """Transversal search parameters derived from the flat settings."""
        return TransversalConfig(
            coarse_samples=self.coarse_samples,
            refine_iters=self.refine_iters,
            contain_tol=self.contain_tol,
        )

    @property
    def pierce_config(self) -> PierceConfig:
        """Full pipeline parameters derived from the flat settings."""
        return PierceConfig(
            approx=self.approx_config,
            transversal=self.transversal_config,
            contain_tol=self.contain_tol,
            brute_force_k=self.brute_force_k,
            max_brute_force_polys=self.max_brute_force_polys,
        )


# Global settings instance
settings = Settings()
