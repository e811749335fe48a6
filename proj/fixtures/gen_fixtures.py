#!/usr/bin/env python3
"""Regenerates the hand-shaped fixture traces and scenarios under fixtures/.

The traces are synthetic docker-stats exports shaped after typical behaviour
of each image (PI: CPU-bound jobs, YUM: download + install I/O, Tomcat: large
resident heap, MySQL: bursty queries and a memory-hungry join). Output is
deterministic; rerun after editing and commit the results.
"""

import json
import math
from pathlib import Path

HERE = Path(__file__).resolve().parent
MiB = 1024 * 1024
GiB = 1024 * MiB
HEADER = ("tick_s,container,service,cpu_pct,mem_bytes,net_rx_bytes,net_tx_bytes,"
          "blk_read_bytes,blk_write_bytes")


def write_trace(name, rows):
    path = HERE / "traces" / f"{name}.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as f:
        f.write(HEADER + "\n")
        for r in rows:
            f.write(",".join(str(x) for x in r) + "\n")


class Counter:
    """Cumulative byte counters, as docker stats reports them."""

    def __init__(self):
        self.rx = self.tx = self.rd = self.wr = 0

    def add(self, rx=0, tx=0, rd=0, wr=0):
        self.rx += int(rx)
        self.tx += int(tx)
        self.rd += int(rd)
        self.wr += int(wr)
        return [self.rx, self.tx, self.rd, self.wr]


def pi_rows():
    rows = []
    c = Counter()
    for t in range(0, 90):
        if 10 <= t < 25:
            cpu = 100.0  # single-thread job
        elif 38 <= t < 70:
            cpu = 200.0  # two-thread job
        else:
            cpu = 0.2
        mem = 6 * MiB + (2 * MiB if cpu > 1 else 0)
        rows.append([t, "pi-1", "pi", f"{cpu:.2f}", mem, *c.add(rx=60, tx=40, wr=0)])
    return rows


def mysql_rows():
    rows = []
    for name in ("mysql-1", "mysql-2"):
        c = Counter()
        offset = 0 if name == "mysql-1" else 3
        for t in range(0, 120):
            base_mem = 190 * MiB + (4 * MiB if name == "mysql-2" else 0)
            cpu, mem, rx, tx, rd, wr = 0.5, base_mem, 300, 200, 0, 2048
            if (t + offset) % 15 in (0, 1, 2):  # scan/select/count bursts
                cpu, rx, tx, rd = 45.0, 8000, 60000, 400 * 1024
            if 84 <= t < 96:  # three-table join
                cpu = 98.0
                mem = base_mem + 140 * MiB
                rd = 2 * MiB
                wr = 512 * 1024
            rows.append([t, name, "mysql", f"{cpu:.2f}", int(mem), *c.add(rx, tx, rd, wr)])
    return rows


def tomcat_rows():
    rows = []
    c = Counter()
    for t in range(0, 120):
        rate = 10 if t < 60 else 20  # HelloWorld queries per second
        cpu = 1.5 + 0.12 * rate + 0.4 * math.sin(t / 3.0)
        mem = 212 * MiB + int(0.2 * MiB * (t % 20))
        rows.append([t, "tomcat-1", "tomcat", f"{cpu:.2f}", mem,
                     *c.add(rx=rate * 180, tx=rate * 420, rd=0, wr=256)])
    return rows


def yum_rows():
    rows = []
    c = Counter()
    for t in range(0, 120):
        cpu, mem, rx, tx, rd, wr = 0.3, 28 * MiB, 100, 80, 0, 0
        if 5 <= t < 45:  # package download
            cpu, mem = 3.5, 42 * MiB
            rx, tx = 4 * 1000 * 1000, 30 * 1000
            wr = 4 * 1000 * 1000
        if 45 <= t < 70:  # install
            cpu, mem = 6.0, 48 * MiB
            rd, wr = 6 * 1000 * 1000, 12 * 1000 * 1000
        rows.append([t, "yum-1", "yum", f"{cpu:.2f}", mem, *c.add(rx, tx, rd, wr)])
    return rows


def zero_rows():
    return [[t, "idle-1", "idle", "0.00", 0, 0, 0, 0, 0] for t in range(0, 10)]


# Idle footprints (steady memory MiB, steady cpu cores) for the image pool.
IDLE_POOL = [
    ("mongodb", 130, 0.012), ("mysql", 150, 0.008), ("postgres", 60, 0.004),
    ("cassandra", 160, 0.020), ("rethinkdb", 110, 0.010), ("registry", 40, 0.002),
    ("memcached", 45, 0.002), ("tomcat", 120, 0.006), ("httpd", 50, 0.003),
    ("redis", 105, 0.004), ("haproxy", 40, 0.002), ("jetty", 140, 0.007),
    ("nginx", 45, 0.002), ("rabbitmq", 135, 0.015),
]

WORKERS = [
    {"id": "w1", "capacity": {"memory": "4GiB", "cpu": 1, "network": "125MB", "block_io": "150MB"},
     "labels": ["small"]},
    {"id": "w2", "capacity": {"memory": "8GiB", "cpu": 4, "network": "125MB", "block_io": "150MB"},
     "labels": ["medium"]},
    {"id": "w3", "capacity": {"memory": "16GiB", "cpu": 8, "network": "125MB", "block_io": "150MB"},
     "labels": ["large"]},
]


def idle_trace(name, mem_mib, cpu):
    # Two 5-second start-up samples (image layers read, runtime warming up),
    # then the steady idle footprint forever.
    return {
        "id": f"idle-{name}",
        "sample_interval_s": 5,
        "samples": [
            [f"{mem_mib * 0.5:g}MiB", 0.35, "20KB", "25MB"],
            [f"{mem_mib * 0.9:g}MiB", 0.12, "8KB", "6MB"],
            [f"{mem_mib:g}MiB", cpu, "2KB", "4KB"],
        ],
    }


def idle_scenario(name, n_services, max_ticks, extra=None):
    pool = IDLE_POOL[:n_services]
    doc = {
        "name": name,
        "scheduler": "spread",
        "seed": 7,
        "tick_seconds": 1,
        "heartbeat_period_ticks": 5,
        "max_ticks": max_ticks,
        "threshold": 0.10,
        "alert_cooldown_periods": 3,
        "warmup_samples": 12,
        "window_samples": 6,
        "workers": WORKERS,
        "traces": [idle_trace(n, m, c) for n, m, c in pool],
        "services": [{"id": n, "trace": f"idle-{n}"} for n, _, _ in pool],
        "arrival_pattern": {"start_tick": 0, "interval_ticks": 5, "per_service": 10,
                            "order": "round_robin"},
    }
    if extra:
        doc.update(extra)
    return doc


def write_scenario(name, doc):
    path = HERE / "scenarios" / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")


def main():
    write_trace("pi", pi_rows())
    write_trace("mysql", mysql_rows())
    write_trace("tomcat", tomcat_rows())
    write_trace("yum", yum_rows())
    write_trace("zero", zero_rows())

    write_scenario("idle100", idle_scenario("idle100", 10, 800))
    write_scenario("idle140", idle_scenario("idle140", 14, 1000))
    write_scenario("idle140_reserved",
                   idle_scenario("idle140_reserved", 14, 1000,
                                 {"scheduler": "draps", "reserve_trace_peaks": True}))

    # Workload mix read straight from the trace CSVs.
    mixed = {
        "name": "workloads",
        "scheduler": "draps",
        "seed": 3,
        "max_ticks": 400,
        "workers": WORKERS,
        "traces": [
            {"id": "pi", "file": "../traces/pi.csv", "service": "pi"},
            {"id": "mysql", "file": "../traces/mysql.csv", "service": "mysql"},
            {"id": "tomcat", "file": "../traces/tomcat.csv", "service": "tomcat"},
            {"id": "yum", "file": "../traces/yum.csv", "service": "yum"},
        ],
        "services": [
            {"id": "pi", "trace": "pi"},
            {"id": "mysql", "trace": "mysql"},
            {"id": "tomcat", "trace": "tomcat"},
            {"id": "yum", "trace": "yum"},
        ],
        "arrival_pattern": {"start_tick": 0, "interval_ticks": 4, "per_service": 8,
                            "order": "round_robin"},
    }
    write_scenario("workloads", mixed)


if __name__ == "__main__":
    main()
