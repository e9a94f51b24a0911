"""Planar rigid motions, downward camera projection, and footprint overlap.

Conventions:
- World and robot frames are right-handed with z up; the ground plane is z = 0
  in both.
- A robot pose is (x, y, yaw) in the world frame; yaw is kept in (-pi, pi].
- Image coordinates are (u, v) with u along width and v along height; the
  camera frame is the usual computer-vision one (x right, y down, z forward),
  so a downward camera has its optical axis pointing at negative robot z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateProjectionError

_TWO_PI = 2.0 * math.pi

# Direction cosine below which a viewing ray is considered parallel to the
# ground plane.
_RAY_EPS = 1e-12


def wrap_angle(theta):
    """Wrap an angle (scalar or array) to (-pi, pi]."""
    wrapped = np.remainder(theta, _TWO_PI)
    wrapped = np.where(wrapped > math.pi, wrapped - _TWO_PI, wrapped)
    if np.ndim(theta) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class Pose2:
    """SE(2) pose: translation in meters, yaw in radians, normalized on build."""

    x: float
    y: float
    yaw: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "yaw", wrap_angle(float(self.yaw)))

    @classmethod
    def identity(cls) -> "Pose2":
        return cls(0.0, 0.0, 0.0)

    def matrix(self) -> np.ndarray:
        """Homogeneous 3x3 form."""
        c, s = math.cos(self.yaw), math.sin(self.yaw)
        return np.array([[c, -s, self.x], [s, c, self.y], [0.0, 0.0, 1.0]])

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "Pose2":
        return cls(float(m[0, 2]), float(m[1, 2]), math.atan2(m[1, 0], m[0, 0]))

    def compose(self, other: "Pose2") -> "Pose2":
        c, s = math.cos(self.yaw), math.sin(self.yaw)
        return Pose2(
            self.x + c * other.x - s * other.y,
            self.y + s * other.x + c * other.y,
            self.yaw + other.yaw,
        )

    def inverse(self) -> "Pose2":
        c, s = math.cos(self.yaw), math.sin(self.yaw)
        return Pose2(-(c * self.x + s * self.y), -(-s * self.x + c * self.y), -self.yaw)

    def transform_points(self, points: np.ndarray) -> np.ndarray:
        """Map (N, 2) points from this pose's frame into its parent frame."""
        pts = np.asarray(points, dtype=np.float64)
        c, s = math.cos(self.yaw), math.sin(self.yaw)
        rot = np.array([[c, -s], [s, c]])
        return pts @ rot.T + np.array([self.x, self.y])

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.yaw])


def se2_compose(a: Pose2, b: Pose2) -> Pose2:
    """Group product; equals the product of the homogeneous matrices."""
    return a.compose(b)


def se2_inverse(p: Pose2) -> Pose2:
    return p.inverse()


@dataclass(frozen=True)
class CameraModel:
    """Pinhole intrinsics plus the rigid camera-to-robot mount transform.

    ``camera_to_robot`` is a 4x4 homogeneous transform taking camera-frame
    points to robot-frame points. For a downward-facing camera, the camera
    z axis (optical axis) must have a strictly negative robot-frame z
    component.
    """

    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int
    camera_to_robot: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (self.fx > 0 and self.fy > 0):
            raise ValueError("focal lengths must be positive")
        if not (0 < self.cx < self.width and 0 < self.cy < self.height):
            raise ValueError("principal point must lie inside the image")
        t = np.array(self.camera_to_robot, dtype=np.float64)
        if t.shape != (4, 4):
            raise ValueError("camera_to_robot must be 4x4")
        rot = t[:3, :3]
        if not np.allclose(rot @ rot.T, np.eye(3), atol=1e-9):
            raise ValueError("camera_to_robot rotation must be orthonormal")
        if np.linalg.det(rot) < 0:
            raise ValueError("camera_to_robot rotation must be proper (det +1)")
        if rot[2, 2] >= 0:
            raise ValueError("camera optical axis must point toward the ground")
        t.setflags(write=False)
        object.__setattr__(self, "camera_to_robot", t)

    @classmethod
    def nadir(cls, fx, fy, cx, cy, width, height, camera_height,
              forward_offset=0.0) -> "CameraModel":
        """Straight-down camera at the given height above the ground.

        The camera x axis is aligned with robot x (forward) and the optical
        axis looks straight down; ``forward_offset`` shifts the mount along
        robot x.
        """
        t = np.array([
            [1.0, 0.0, 0.0, forward_offset],
            [0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, camera_height],
            [0.0, 0.0, 0.0, 1.0],
        ])
        return cls(fx, fy, cx, cy, width, height, t)

    @property
    def camera_origin_robot(self) -> np.ndarray:
        return self.camera_to_robot[:3, 3]


def pixel_to_ground(cam: CameraModel, pixels) -> np.ndarray:
    """Intersect pixel viewing rays with the robot-frame ground plane z = 0.

    ``pixels``: (2,) or (N, 2) array of (u, v). Returns ground coordinates of
    the same leading shape, in meters, robot frame.
    """
    px = np.atleast_2d(np.asarray(pixels, dtype=np.float64))
    rays_cam = np.stack([
        (px[:, 0] - cam.cx) / cam.fx,
        (px[:, 1] - cam.cy) / cam.fy,
        np.ones(len(px)),
    ], axis=1)
    rot = cam.camera_to_robot[:3, :3]
    origin = cam.camera_to_robot[:3, 3]
    rays = rays_cam @ rot.T
    dz = rays[:, 2]
    if np.any(np.abs(dz) < _RAY_EPS):
        raise DegenerateProjectionError("viewing ray parallel to ground plane")
    scale = -origin[2] / dz
    if np.any(scale <= 0):
        raise DegenerateProjectionError("ground plane behind the camera")
    ground = origin[:2] + scale[:, None] * rays[:, :2]
    if np.ndim(pixels) == 1:
        return ground[0]
    return ground


def ground_to_pixel(cam: CameraModel, points) -> np.ndarray:
    """Project robot-frame ground points (z = 0) back into the image."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    pts3 = np.column_stack([pts, np.zeros(len(pts))])
    rot = cam.camera_to_robot[:3, :3]
    origin = cam.camera_to_robot[:3, 3]
    in_cam = (pts3 - origin) @ rot
    z = in_cam[:, 2]
    if np.any(z <= _RAY_EPS):
        raise DegenerateProjectionError("ground point not in front of the camera")
    uv = np.stack([
        cam.fx * in_cam[:, 0] / z + cam.cx,
        cam.fy * in_cam[:, 1] / z + cam.cy,
    ], axis=1)
    if np.ndim(points) == 1:
        return uv[0]
    return uv


def fov_quad(cam: CameraModel, robot_pose: Pose2) -> np.ndarray:
    """World-frame ground footprint of the full image, as a CCW convex quad.

    Returns a (4, 2) array. Raises DegenerateProjectionError if any image
    corner fails to project onto the ground.
    """
    corners_px = np.array([
        [0.0, 0.0],
        [cam.width, 0.0],
        [cam.width, cam.height],
        [0.0, cam.height],
    ])
    ground = pixel_to_ground(cam, corners_px)
    world = robot_pose.transform_points(ground)
    if _signed_area(world) < 0:
        world = world[::-1]
    return world


def _signed_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_area(poly) -> float:
    """Absolute area of a simple polygon ((N, 2) vertices)."""
    poly = np.asarray(poly, dtype=np.float64)
    if len(poly) < 3:
        return 0.0
    return abs(_signed_area(poly))


def _clip_halfplane(poly, a, b):
    """Keep the part of ``poly`` left of the directed edge a->b (inclusive)."""
    edge = b - a
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        side_p = edge[0] * (p[1] - a[1]) - edge[1] * (p[0] - a[0])
        side_q = edge[0] * (q[1] - a[1]) - edge[1] * (q[0] - a[0])
        if side_p >= 0:
            out.append(p)
            if side_q < 0:
                out.append(_edge_intersection(p, q, side_p, side_q))
        elif side_q >= 0:
            out.append(_edge_intersection(p, q, side_p, side_q))
    return out


def _edge_intersection(p, q, side_p, side_q):
    t = side_p / (side_p - side_q)
    return p + t * (q - p)


def convex_clip(subject, clip) -> np.ndarray:
    """Sutherland-Hodgman clip of one convex polygon by another (both CCW)."""
    poly = [np.asarray(v, dtype=np.float64) for v in subject]
    clip = np.asarray(clip, dtype=np.float64)
    for i in range(len(clip)):
        if not poly:
            break
        poly = _clip_halfplane(poly, clip[i], clip[(i + 1) % len(clip)])
    return np.array(poly) if poly else np.empty((0, 2))


def convex_intersection_area(a, b) -> float:
    """Intersection area of two convex CCW polygons; 0 when disjoint."""
    clipped = convex_clip(a, b)
    return polygon_area(clipped)


def overlap_iou(a, b) -> float:
    """Intersection-over-union of two convex footprints."""
    inter = convex_intersection_area(a, b)
    if inter <= 0.0:
        return 0.0
    union = polygon_area(a) + polygon_area(b) - inter
    if union <= 0.0:
        return 0.0
    return inter / union
