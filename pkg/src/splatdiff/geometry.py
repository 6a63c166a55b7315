"""Rigid transforms and the pinhole camera model.

Conventions used throughout the package:
  - SE(3) tangent vectors are ordered (translation, rotation); the
    refinement gradients depend on this ordering.
  - Camera frame is right-handed with +z forward; image origin is the
    top-left corner and pixel centers sit at integer coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AngleNearPi, BehindCamera, NonPositiveDepth

_ORTHO_TOL = 1e-9


def _skew(w: np.ndarray) -> np.ndarray:
    return np.array(
        [
            [0.0, -w[2], w[1]],
            [w[2], 0.0, -w[0]],
            [-w[1], w[0], 0.0],
        ]
    )


@dataclass(frozen=True)
class SE3:
    """Rigid transform: x_out = rotation @ x_in + translation."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        t = np.asarray(self.translation, dtype=float).reshape(3)
        err = np.abs(R.T @ R - np.eye(3)).max()
        if err >= _ORTHO_TOL or np.linalg.det(R) < 0:
            raise ValueError(f"rotation not orthonormal with det +1 (err={err:.2e})")
        R.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "translation", t)

    @staticmethod
    def identity() -> "SE3":
        return SE3(np.eye(3), np.zeros(3))

    @staticmethod
    def from_matrix(m: np.ndarray) -> "SE3":
        m = np.asarray(m, dtype=float)
        return SE3(m[:3, :3], m[:3, 3])

    def matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m

    def compose(self, other: "SE3") -> "SE3":
        """Returns self o other (apply `other` first)."""
        return SE3(self.rotation @ other.rotation,
                   self.rotation @ other.translation + self.translation)

    def __matmul__(self, other: "SE3") -> "SE3":
        return self.compose(other)

    def inverse(self) -> "SE3":
        Rt = self.rotation.T
        return SE3(Rt, -Rt @ self.translation)

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Transform one (3,) point or an (N, 3) cloud."""
        pts = np.asarray(points, dtype=float)
        return pts @ self.rotation.T + self.translation

    def rotation_angle(self) -> float:
        cos = (np.trace(self.rotation) - 1.0) / 2.0
        return float(np.arccos(np.clip(cos, -1.0, 1.0)))


def se3_exp(xi: np.ndarray) -> SE3:
    """Exponential map from (translation, rotation) tangent coordinates.

    se3_exp(0) is the identity; the rotation block is the Rodrigues
    formula and the translation is warped by the left Jacobian.
    """
    xi = np.asarray(xi, dtype=float).reshape(6)
    if not np.all(np.isfinite(xi)):
        raise ValueError("tangent vector must be finite")
    rho, w = xi[:3], xi[3:]
    theta = np.linalg.norm(w)
    K = _skew(w)
    K2 = K @ K
    if theta < 1e-8:
        # Taylor expansions; keeps exp(log(T)) round-trips exact near 0
        R = np.eye(3) + K + 0.5 * K2
        V = np.eye(3) + 0.5 * K + K2 / 6.0
        U, _, Vt = np.linalg.svd(R)
        R = U @ Vt
        if np.linalg.det(R) < 0:
            U[:, -1] *= -1
            R = U @ Vt
    else:
        s, c = np.sin(theta), np.cos(theta)
        R = np.eye(3) + (s / theta) * K + ((1.0 - c) / theta**2) * K2
        V = (
            np.eye(3)
            + ((1.0 - c) / theta**2) * K
            + ((theta - s) / theta**3) * K2
        )
        # re-orthonormalize to keep the SE3 constructor's 1e-9 gate happy
        U, _, Vt = np.linalg.svd(R)
        R = U @ Vt
        if np.linalg.det(R) < 0:
            U[:, -1] *= -1
            R = U @ Vt
    return SE3(R, V @ rho)


def se3_log(T: SE3) -> np.ndarray:
    """Inverse of se3_exp. Raises AngleNearPi for angles >= pi - 1e-6."""
    R = T.rotation
    cos = np.clip((np.trace(R) - 1.0) / 2.0, -1.0, 1.0)
    theta = float(np.arccos(cos))
    if theta >= np.pi - 1e-6:
        raise AngleNearPi(f"rotation angle {theta:.6f} too close to pi")
    if theta < 1e-8:
        w = 0.5 * np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
        K = _skew(w)
        Vinv = np.eye(3) - 0.5 * K + (K @ K) / 12.0
    else:
        w = (theta / (2.0 * np.sin(theta))) * np.array(
            [R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]]
        )
        K = _skew(w)
        coef = (1.0 / theta**2) - (1.0 + np.cos(theta)) / (2.0 * theta * np.sin(theta))
        Vinv = np.eye(3) - 0.5 * K + coef * (K @ K)
    rho = Vinv @ T.translation
    return np.concatenate([rho, w])


@dataclass(frozen=True)
class PinholeCamera:
    """Calibrated pinhole camera with a world-from-camera pose."""

    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int
    pose_world_from_camera: SE3 = field(default_factory=SE3.identity)

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise ValueError("focal lengths must be positive")
        if not (0 <= self.cx < self.width and 0 <= self.cy < self.height):
            raise ValueError("principal point must lie inside the image")

    @property
    def pose_camera_from_world(self) -> SE3:
        return self.pose_world_from_camera.inverse()

    def with_pose(self, pose_world_from_camera: SE3) -> "PinholeCamera":
        return PinholeCamera(self.fx, self.fy, self.cx, self.cy,
                             self.width, self.height, pose_world_from_camera)

    def scaled(self, factor: float) -> "PinholeCamera":
        """Camera for an image resampled by `factor` (pixel centers at ints)."""
        w = max(1, int(round(self.width * factor)))
        h = max(1, int(round(self.height * factor)))
        return PinholeCamera(
            self.fx * factor,
            self.fy * factor,
            (self.cx + 0.5) * factor - 0.5,
            (self.cy + 0.5) * factor - 0.5,
            w,
            h,
            self.pose_world_from_camera,
        )

    def project(self, point_world: np.ndarray) -> tuple[np.ndarray, float]:
        """Project a single world point; raises BehindCamera for z <= 1e-9."""
        p = self.pose_camera_from_world.apply(np.asarray(point_world, dtype=float))
        z = p[2]
        if z <= 1e-9:
            raise BehindCamera(f"point depth {z:.3e} not in front of camera")
        pixel = np.array([self.fx * p[0] / z + self.cx, self.fy * p[1] / z + self.cy])
        return pixel, float(z)

    def project_points(self, points_world: np.ndarray):
        """Vectorized projection.

        Returns (pixels (N,2), depths (N,), in_front (N,) bool); pixels and
        depths are only meaningful where in_front is set.
        """
        pts = np.atleast_2d(np.asarray(points_world, dtype=float))
        p = self.pose_camera_from_world.apply(pts)
        z = p[:, 2]
        in_front = z > 1e-9
        zsafe = np.where(in_front, z, 1.0)
        pix = np.stack(
            [self.fx * p[:, 0] / zsafe + self.cx, self.fy * p[:, 1] / zsafe + self.cy],
            axis=1,
        )
        return pix, z, in_front

    def backproject(self, pixel: np.ndarray, depth: float) -> np.ndarray:
        """Lift a pixel at the given camera-frame depth back to world space."""
        if depth <= 0:
            raise NonPositiveDepth(f"depth {depth} must be positive")
        u, v = float(pixel[0]), float(pixel[1])
        p_cam = np.array(
            [(u - self.cx) / self.fx * depth, (v - self.cy) / self.fy * depth, depth]
        )
        return self.pose_world_from_camera.apply(p_cam)

    def backproject_points(self, pixels: np.ndarray, depths: np.ndarray) -> np.ndarray:
        """Vectorized backprojection of (N,2) pixels at (N,) depths."""
        pixels = np.atleast_2d(np.asarray(pixels, dtype=float))
        depths = np.asarray(depths, dtype=float).reshape(-1)
        if np.any(depths <= 0):
            raise NonPositiveDepth("all depths must be positive")
        x = (pixels[:, 0] - self.cx) / self.fx * depths
        y = (pixels[:, 1] - self.cy) / self.fy * depths
        return self.pose_world_from_camera.apply(np.stack([x, y, depths], axis=1))


def look_at_pose(eye: np.ndarray, target: np.ndarray,
                 up: np.ndarray = (0.0, 0.0, 1.0)) -> SE3:
    """World-from-camera pose with +z looking from eye toward target."""
    eye = np.asarray(eye, dtype=float)
    fwd = np.asarray(target, dtype=float) - eye
    fwd = fwd / np.linalg.norm(fwd)
    upv = np.asarray(up, dtype=float)
    right = np.cross(fwd, upv)
    n = np.linalg.norm(right)
    if n < 1e-9:  # looking straight along up; pick an arbitrary right
        right = np.cross(fwd, np.array([1.0, 0.0, 0.0]))
        n = np.linalg.norm(right)
    right = right / n
    down = np.cross(fwd, right)
    R = np.stack([right, down, fwd], axis=1)
    U, _, Vt = np.linalg.svd(R)
    R = U @ Vt
    if np.linalg.det(R) < 0:
        U[:, -1] *= -1
        R = U @ Vt
    return SE3(R, eye)
