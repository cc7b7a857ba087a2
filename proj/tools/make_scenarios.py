#!/usr/bin/env python3
"""Regenerates the bundled synthetic scenarios under scenarios/.

Deterministic: fixed RNG seeds, stable float formatting. The aegean20
archipelago is synthetic (no real coastlines); islands are placed in the
corridor between the two ports so the straight route is blocked but plenty
of feasible threadings remain.
"""

import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "scenarios"

EARTH_RADIUS_M = 6371000.0
SCALE_M = 1000.0  # frame units are kilometres

DEPARTURE = (40.5197, 22.9709)  # Thessaloniki, lat/lon
ARRIVAL = (35.1508, 25.7227)    # Ag. Nikolaos


class Frame:
    """Equirectangular projection at the departure latitude plus rotation,
    mirroring the library's planning frame."""

    def __init__(self, dep, arr):
        self.lat0, self.lon0 = dep
        self.cos0 = math.cos(math.radians(self.lat0))
        ax = EARTH_RADIUS_M * self.cos0 * math.radians(arr[1] - self.lon0) / SCALE_M
        ay = EARTH_RADIUS_M * math.radians(arr[0] - self.lat0) / SCALE_M
        self.rot = -math.atan2(ay, ax)
        self.span = math.hypot(ax, ay)

    def to_geo(self, x, y):
        c, s = math.cos(-self.rot), math.sin(-self.rot)
        px, py = x * c - y * s, x * s + y * c
        lat = self.lat0 + math.degrees(py * SCALE_M / EARTH_RADIUS_M)
        lon = self.lon0 + math.degrees(px * SCALE_M / (EARTH_RADIUS_M * self.cos0))
        return lat, lon


def make_island(rng, cx, cy, radius, vertices):
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(vertices))
    # Keep consecutive angles apart so the polygon stays simple.
    for i in range(1, len(angles)):
        angles[i] = max(angles[i], angles[i - 1] + 0.15)
    pts = []
    for a in angles:
        r = radius * rng.uniform(0.78, 1.0)
        pts.append((cx + r * math.cos(a), cy + r * math.sin(a)))
    return pts


def gen_archipelago(frame):
    rng = random.Random(20)
    d = frame.span
    islands = []  # (cx, cy, radius, polygon)

    def fits(cx, cy, radius):
        if not (0.08 * d < cx < 0.92 * d):
            return False
        for ox, oy, orad, _ in islands:
            if math.hypot(cx - ox, cy - oy) < radius + orad + 9.0:
                return False
        return True

    # Axis blockers first: a staggered fence across y = 0 so the straight
    # route must weave.
    blocker_xs = [0.16, 0.29, 0.42, 0.55, 0.68, 0.81]
    for i, fx in enumerate(blocker_xs):
        for _ in range(200):
            cx = fx * d + rng.uniform(-0.02, 0.02) * d
            cy = rng.uniform(-6.0, 6.0)
            radius = rng.uniform(14.0, 20.0)
            if abs(cy) < radius - 4.0 and fits(cx, cy, radius):
                islands.append((cx, cy, radius, make_island(rng, cx, cy, radius,
                                                            rng.randint(7, 10))))
                break

    # Fill the corridor with the rest.
    while len(islands) < 20:
        cx = rng.uniform(0.08, 0.92) * d
        cy = rng.uniform(-0.20, 0.20) * d
        radius = rng.uniform(10.0, 18.0)
        if fits(cx, cy, radius):
            islands.append((cx, cy, radius, make_island(rng, cx, cy, radius,
                                                        rng.randint(7, 10))))

    return [poly for _, _, _, poly in islands]


def geojson_feature(ring_latlon, name):
    coords = [[round(lon, 6), round(lat, 6)] for lat, lon in ring_latlon]
    coords.append(coords[0])
    return {
        "type": "Feature",
        "properties": {"name": name},
        "geometry": {"type": "Polygon", "coordinates": [coords]},
    }


def write_aegean(frame):
    polys = gen_archipelago(frame)
    features = []
    for i, poly in enumerate(polys):
        ring = [frame.to_geo(x, y) for x, y in poly]
        features.append(geojson_feature(ring, f"island-{i:02d}"))
    (OUT / "aegean20_islands.geojson").write_text(
        json.dumps({"type": "FeatureCollection", "features": features}, indent=2) + "\n")

    scenario = {
        "schema_version": 1,
        "name": "aegean20",
        "frame": {"mode": "geodetic", "scale_m": SCALE_M},
        "departure": {"lat": DEPARTURE[0], "lon": DEPARTURE[1]},
        "arrival": {"lat": ARRIVAL[0], "lon": ARRIVAL[1]},
        "environment": {"uniform": {"wind": [0, 0], "wave": [0, 0]}},
        "obstacles": {"geojson": "aegean20_islands.geojson", "coords": "geodetic"},
        "ship": {
            "speed": 30.0,
            "wind_response": [[1, 0], [0, 1]],
            "wave_response": [[1, 0], [0, 1]],
            "max_turn_deg": 75,
        },
        "alpha": 1.0,
        "route": {"free_waypoints": 20, "quadrature_samples": 8},
        "penalty": {"lambda0": 1.0, "tie_sharpness_to_lambda": True, "area_tolerance": 1e-9},
        "network": {
            "levels": [
                {"resolution": 6, "islands": 1, "anneal_rate": 0.20},
                {"resolution": 8, "islands": 1, "anneal_rate": 0.10},
                {"resolution": 10, "islands": 1, "anneal_rate": 0.05},
            ],
            "population_size": 40,
            "migration_interval": 10,
            "migration_fraction": 0.25,
        },
        "termination": {"max_generations": 300, "plateau_generations": 60},
        "seed": 2024,
        "sa": {
            "initial_temperature": 1.0,
            "cooling": 0.98,
            "steps_per_temperature": 150,
            "step_cells": 8,
            "anneal_rate": 0.02,
            "max_evaluations": 65000,
        },
        "bypass": {"cap": 14, "clearance": 0.0, "margin": 3.0,
                   "population_size": 20, "generations": 40},
    }
    (OUT / "aegean20.json").write_text(json.dumps(scenario, indent=2) + "\n")
    return polys


def write_meltemi(frame):
    d = frame.span
    cell = 22.0
    x0, y0 = -0.02 * d, -1.02 * d
    nx = int(math.ceil(1.04 * d / cell)) + 1
    ny = int(math.ceil(2.04 * d / cell)) + 1

    rows = ["x,y,vx,vy,wx,wy"]
    for iy in range(ny):
        for ix in range(nx):
            x = x0 + cell * ix
            y = y0 + cell * iy
            # Synthetic summer-wind snapshot in frame coordinates: a steady
            # cross-corridor stream with smooth spatial modulation.
            vx = 0.35 + 0.20 * math.sin(2 * math.pi * x / d)
            vy = -0.55 + 0.25 * math.cos(math.pi * y / (0.7 * d))
            wx = 0.30 * vx
            wy = 0.30 * vy
            rows.append(f"{x:.6f},{y:.6f},{vx:.6f},{vy:.6f},{wx:.6f},{wy:.6f}")
    (OUT / "meltemi_env.csv").write_text("\n".join(rows) + "\n")
    (OUT / "meltemi_env.meta.json").write_text(json.dumps({
        "origin": [x0, y0], "cell_size": cell, "nx": nx, "ny": ny}, indent=2) + "\n")

    scenario = json.loads((OUT / "aegean20.json").read_text())
    scenario["name"] = "meltemi"
    scenario["environment"] = {"grid_csv": "meltemi_env.csv", "meta_json": "meltemi_env.meta.json"}
    scenario["alpha"] = 0.7
    scenario["ship"]["wind_response"] = [[0.05, 0.0], [0.0, 0.05]]
    scenario["ship"]["wave_response"] = [[0.02, 0.0], [0.0, 0.02]]
    scenario["termination"] = {"max_generations": 200, "plateau_generations": 40}
    (OUT / "meltemi.json").write_text(json.dumps(scenario, indent=2) + "\n")


def write_bench4():
    rng = random.Random(4)
    obstacles = []
    for i in range(6):
        cx = 12.0 + 13.0 * i + rng.uniform(-2, 2)
        cy = rng.uniform(-6, 6)
        r = rng.uniform(3.5, 5.5)
        obstacles.append(make_island(rng, cx, cy, r, 8))
    features = []
    for i, poly in enumerate(obstacles):
        coords = [[round(x, 6), round(y, 6)] for x, y in poly]
        coords.append(coords[0])
        features.append({
            "type": "Feature",
            "properties": {"name": f"shoal-{i}"},
            "geometry": {"type": "Polygon", "coordinates": [coords]},
        })
    (OUT / "bench4_obstacles.geojson").write_text(
        json.dumps({"type": "FeatureCollection", "features": features}, indent=2) + "\n")

    scenario = {
        "schema_version": 1,
        "name": "bench4",
        "frame": {"mode": "planar"},
        "departure": {"x": 0, "y": 0},
        "arrival": {"x": 100, "y": 0},
        "environment": {"uniform": {"wind": [0.4, -0.3], "wave": [0.1, -0.1]}},
        "obstacles": {"geojson": "bench4_obstacles.geojson", "coords": "frame"},
        "ship": {
            "speed": 10.0,
            "wind_response": [[0.3, 0.0], [0.0, 0.3]],
            "wave_response": [[0.2, 0.0], [0.0, 0.2]],
            "max_turn_deg": 75,
        },
        "alpha": 0.6,
        "route": {"free_waypoints": 20, "quadrature_samples": 8},
        "penalty": {"lambda0": 1.0, "tie_sharpness_to_lambda": True, "area_tolerance": 1e-9},
        "network": {
            "levels": [
                {"resolution": 8, "islands": 2, "anneal_rate": 0.15},
                {"resolution": 10, "islands": 2, "anneal_rate": 0.08},
            ],
            "population_size": 48,
            "migration_interval": 10,
            "migration_fraction": 0.25,
        },
        "termination": {"max_generations": 120, "plateau_generations": 0},
        "seed": 99,
    }
    (OUT / "bench4.json").write_text(json.dumps(scenario, indent=2) + "\n")


def main():
    frame = Frame(DEPARTURE, ARRIVAL)
    print(f"frame span: {frame.span:.3f} km, rotation {frame.rot:.5f} rad")
    write_aegean(frame)
    write_meltemi(frame)
    write_bench4()
    print("scenarios written to", OUT)


if __name__ == "__main__":
    main()
