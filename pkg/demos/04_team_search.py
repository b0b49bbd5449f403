"""Treasure hunt by a team: k collocated agents without any oracle at all.

With k agents the advice can be replaced by disagreement: let z = floor(log2 k),
split the plane into 2**z sectors, and have agent i pretend it was advised
sector i - 1.  Agents beyond 2**z idle.  Whatever sector hides the treasure,
exactly one agent runs the right universal hunt, so the parallel time equals
that single advised run.
"""

import math

import planehunt as ph

r = 0.4
treasure_dir = 5.7  # radians ccw from North
dist = 9.0
q = (-dist * math.sin(treasure_dir), dist * math.cos(treasure_dir))

for k in (1, 2, 4, 5, 8):
    z = k.bit_length() - 1
    w = ph.encode_advice((0, 0), q, z)
    matched = ph.run(ph.universal(z, w, 0.5, 3), q, r, 1e9)
    times = {}
    for label in range(1, k + 1):
        stream = ph.multi_agent_stream(k, label, 0.5, 3)
        if stream is None:
            times[label] = None  # idle agent
            continue
        out = ph.run(stream, q, r, matched.cost + 1.0)
        times[label] = out.cost if out.found else math.inf
    finishers = {lbl: t for lbl, t in times.items() if t is not None and math.isfinite(t)}
    parallel = min(finishers.values())
    first = sorted(lbl for lbl, t in finishers.items() if t == parallel)
    idle = sorted(lbl for lbl, t in times.items() if t is None)
    print(
        f"k={k}: sectors={1 << z:>2}  treasure sector {int(w, 2) if w else 0}  "
        f"parallel time {parallel:10.3f}  first finisher(s) {first}"
        f"{'  idle ' + str(idle) if idle else ''}"
    )
    # ties happen when the shared no-advice component makes the catch: every
    # agent walks it in lockstep, so all finish together
    assert parallel == matched.cost
