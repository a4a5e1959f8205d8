import numpy as np
from scipy.special import ndtr

LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


def std_normal_pdf(x: float | np.ndarray) -> float | np.ndarray:
    return np.exp(-0.5 * np.square(x) - LOG_SQRT_2PI)


def log_std_normal_pdf(x: float | np.ndarray) -> float | np.ndarray:
    return -0.5 * np.square(x) - LOG_SQRT_2PI


def normal_pdf(x: float | np.ndarray, sigma: float | np.ndarray) -> float | np.ndarray:
    return std_normal_pdf(x / sigma) / sigma


def std_normal_cdf(x: float | np.ndarray) -> float | np.ndarray:
    return ndtr(x)

