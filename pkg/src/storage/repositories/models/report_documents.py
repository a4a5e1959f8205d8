from pydantic import BaseModel, Field


class ConvergenceRowDocument(BaseModel):
    n: int
    D_n: float | None
    prediction: float | None
    residual: float | None
    scaled_residual: float | None
    delta_n: float | None = Field(default=None)
    T_used: float | None = Field(default=None)
    tail_second_moment: float | None = Field(default=None)
    clamped_mass: float | None = Field(default=None)
    grid_drift: float | None = Field(default=None)
    valid: bool = True
    error: str | None = Field(default=None)


class Corollary12RowDocument(BaseModel):
    n: int
    D_n: float | None
    scaled_D_n: float | None
    limit: float
    ratio: float | None
    valid: bool = True
    error: str | None = Field(default=None)


class LowerBoundRowDocument(BaseModel):
    n: int
    D_n: float | None
    bound: float | None
    ratio: float | None
    theorem13_scale: float | None
    fitted_constant: float | None = Field(default=None)
    above_half_bound: bool | None = Field(default=None)
    valid: bool = True
    error: str | None = Field(default=None)


class Condition81RowDocument(BaseModel):
    n: int
    lower_limit: float
    value: float


class CoefficientDocument(BaseModel):
    j: int
    mode: str
    value: str
    value_float: float | None = Field(default=None)


class EdgeworthPointDocument(BaseModel):
    x: float
    phi_m: float
    Phi_m: float
    p_n: float | None = Field(default=None)


class EntropyReportDocument(BaseModel):
    D_total: float
    D_core: float
    tail_mass: float
    tail_second_moment: float
    T_used: float
    D_matched: float | None = Field(default=None)
    reconstruction: float | None = Field(default=None)
