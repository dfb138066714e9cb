#!/usr/bin/env python3
# Copyright 2026 The lanectx Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled map and scenario fixtures under data/."""

import json
import math
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"
W = 3.5


def arc(cx, cy, r, a0, a1, n):
    return [[round(cx + r * math.cos(a0 + (a1 - a0) * k / n), 9),
             round(cy + r * math.sin(a0 + (a1 - a0) * k / n), 9)] for k in range(n + 1)]


def lane(lid, pts, succ=(), left=None, right=None):
    d = {"id": lid, "width": W, "centerline": pts, "successors": list(succ)}
    if left:
        d["left_neighbor"] = left
    if right:
        d["right_neighbor"] = right
    return d


def t_intersection():
    turn = arc(5.25, -5.25, 3.5, math.pi, math.pi / 2, 12)
    stem = [[-1.75, -100.0], [-1.75, -5.25]]
    bend = arc(-8.75, -5.25, 7.0, 0.0, math.pi / 2, 16)
    return {"lanes": [
        lane("adjacent_left", stem + bend[1:], ["exit_west"]),
        lane("ego_approach", [[1.75, -100.0], [1.75, -5.25]], ["right_turn"]),
        lane("exit_east", [[5.25, -1.75], [120.0, -1.75]]),
        lane("exit_west", [[-8.75, 1.75], [-120.0, 1.75]]),
        lane("merge_left", [[-120.0, -1.75], [5.25, -1.75]], ["exit_east"]),
        lane("right_turn", turn, ["exit_east"]),
    ]}


def three_lanes():
    return {"lanes": [
        lane("left", [[-50.0, 3.5], [250.0, 3.5]], right="middle"),
        lane("middle", [[-50.0, 0.0], [250.0, 0.0]], left="left", right="right"),
        lane("right", [[-50.0, -3.5], [250.0, -3.5]], left="middle"),
    ]}


def car(oid, x, y, heading, speed, length=4.5, width=1.8):
    return {"id": oid, "center": [x, y], "heading_rad": heading, "length": length,
            "width": width, "speed": speed}


def write(rel, doc):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")


def main():
    write("maps/t_intersection.json", t_intersection())
    write("maps/three_lanes.json", three_lanes())

    write("scenarios/t_intersection.json", {
        "map": "../maps/t_intersection.json",
        "ego": {"lane": "ego_approach", "station": 75.0, "speed": 8.0,
                "goal": {"lane": "exit_east", "station": 100.0}},
        "objects": [
            car("blocker", -2.69, -1.75, 2.0 * math.pi / 3.0, 0.0),
            car("side_car", -1.75, -23.75, math.pi / 2.0, 0.0),
            car("lead_car", 35.0, -1.75, 0.0, 8.0),
            car("queued_car", -15.0, -1.75, 0.0, 0.0),
        ],
        "sensor": {"range": 60.0, "arc_segments": 64},
        "params": {"d_interest": 100.0, "cell_step": 1.0, "a_brake": -6.0, "min_block_gap": 1.0},
    })

    for name, speed in (("overtaking_stopped", 0.0), ("overtaking_moving", 10.0)):
        write(f"scenarios/{name}.json", {
            "map": "../maps/three_lanes.json",
            "ego": {"lane": "middle", "station": 50.0, "speed": 12.0,
                    "goal": {"lane": "middle", "station": 250.0}},
            "objects": [
                car("right_car", 20.5, -3.5, 0.0, speed),
                car("left_car", -8.0, 3.5, 0.0, 10.0),
            ],
            "sensor": {"range": 100.0, "arc_segments": 64},
            "params": {"d_interest": 100.0, "cell_step": 1.0},
        })

    write("scenarios/straight_empty.json", {
        "map": "../maps/three_lanes.json",
        "ego": {"lane": "middle", "station": 50.0, "speed": 10.0,
                "goal": {"lane": "middle", "station": 150.0}},
        "objects": [],
        "sensor": {"range": 100.0, "arc_segments": 64},
        "params": {"d_interest": 60.0, "cell_step": 1.0},
    })


if __name__ == "__main__":
    main()
