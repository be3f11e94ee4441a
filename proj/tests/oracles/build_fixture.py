#!/usr/bin/env python3
"""Writes the frozen Q4 2012 fixture corpus: mail.csv and survey.csv.

Run once; the outputs are committed under tests/fixtures. Five teams with
different habits so every metric varies across the cohort. A few rows
exercise ingest edge cases: a duplicate, a self-addressed message, a row with
an empty timestamp, a row before the period and offsets other than Z.
"""

import csv
import random
import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

START = datetime(2012, 10, 1, tzinfo=timezone.utc)
END = datetime(2013, 1, 1, tzinfo=timezone.utc)

TOPICS = ["invoice", "purchase order", "credit note", "payment run", "vendor master",
          "month end close", "reconciliation", "travel expenses", "dunning letter"]
POSITIVE = ["thanks", "great work", "good news", "welcome", "kudos"]
NEGATIVE = ["delay", "problem", "urgent issue", "missing", "error"]

TEAMS = {
    # members, clients, hub weight, daily threads, reply prob, mean latency h,
    # positive share, leader rotation, skipped months, members joining in
    # November and December, respondents
    "alpha":   dict(members=7, clients=3, hub=0.55, threads=5, reply=0.7, latency=1.0,
                    positive=0.10, rotate=False, skip=(), joiners=(0, 0), respondents=24),
    "bravo":   dict(members=9, clients=4, hub=0.15, threads=7, reply=0.5, latency=6.0,
                    positive=0.25, rotate=False, skip=(), joiners=(1, 1), respondents=27),
    "charlie": dict(members=6, clients=2, hub=0.45, threads=4, reply=0.6, latency=3.0,
                    positive=0.05, rotate=True, skip=(), joiners=(0, 1), respondents=22),
    "delta":   dict(members=8, clients=5, hub=0.30, threads=4, reply=0.4, latency=10.0,
                    positive=0.30, rotate=True, skip=(11,), joiners=(0, 2), respondents=31),
    "echo":    dict(members=7, clients=3, hub=0.40, threads=5, reply=0.8, latency=2.0,
                    positive=0.15, rotate=False, skip=(), joiners=(2, 0), respondents=20),
}

NPS_MEAN = {"alpha": 8.6, "bravo": 7.4, "charlie": 6.9, "delta": 6.2, "echo": 7.8}
KPD_MEAN = {"alpha": 5.6, "bravo": 4.9, "charlie": 4.6, "delta": 4.1, "echo": 5.0}


def stamp(t, rng):
    if rng.random() < 0.15:
        local = t.astimezone(timezone(timedelta(hours=2)))
        return local.strftime("%Y-%m-%dT%H:%M:%S+02:00")
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


def team_mail(name, cfg, rng):
    nov, dec = cfg["joiners"]
    members = [f"{name[0]}{i:02d}@{name}.example.com" for i in range(cfg["members"] + nov + dec)]
    joined = {m: 11 for m in members[cfg["members"]:cfg["members"] + nov]}
    joined.update({m: 12 for m in members[cfg["members"] + nov:]})
    clients = [f"c{i:02d}@client-{name}.example.org" for i in range(cfg["clients"])]
    used = set()
    rows = []

    def unique_time(t):
        while t in used:
            t += timedelta(seconds=1)
        used.add(t)
        return t

    def send(t, sender, to, cc, subject):
        t = unique_time(t)
        rows.append([t, sender, to, cc, subject])
        return t

    day = START
    while day < END:
        if day.month in cfg["skip"] or day.weekday() >= 5:
            day += timedelta(days=1)
            continue
        week = (day - START).days // 7
        hub = members[week % 3] if cfg["rotate"] else members[0]
        everyone = [m for m in members if joined.get(m, 10) <= day.month] + clients
        for _ in range(cfg["threads"]):
            t = day + timedelta(hours=8, seconds=rng.randrange(9 * 3600))
            if rng.random() < cfg["hub"]:
                sender = hub
            else:
                sender = rng.choice(everyone)
            pool = [a for a in everyone if a != sender]
            if sender != hub and rng.random() < 0.6:
                to = [hub]
            else:
                to = rng.sample(pool, 1 + (rng.random() < 0.3))
            cc = []
            if rng.random() < 0.25:
                cc = rng.sample([a for a in pool if a not in to], 1)
            subject = f"{rng.choice(TOPICS)} {rng.randrange(4000, 4100)}"
            u = rng.random()
            if u < cfg["positive"]:
                subject += " - " + rng.choice(POSITIVE)
            elif u > 0.95:
                subject = rng.choice(NEGATIVE) + ": " + subject
            t0 = send(t, sender, to, cc, subject)
            if rng.random() < cfg["reply"]:
                replier = rng.choice(to + cc)
                lag = timedelta(seconds=max(120, int(rng.expovariate(1 / (cfg["latency"] * 3600)))))
                prefix = rng.choice(["Re: ", "RE: ", "re:  ", "Re: Fwd: "])
                if t0 + lag < END:
                    send(t0 + lag, replier, [sender], [], prefix + subject)
        day += timedelta(days=1)

    rows.sort(key=lambda r: r[0])
    return rows, members, clients


def main(out_dir):
    rng = random.Random(20121001)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    for name, cfg in TEAMS.items():
        rows, members, clients = team_mail(name, cfg, rng)
        for t, sender, to, cc, subject in rows:
            lines.append([stamp(t, rng), sender, ";".join(to), ";".join(cc), subject, name])
        if name == "alpha":
            lines.append(list(lines[-1]))  # exact duplicate
            first = members[1]
            lines.append(["2012-10-15T09:30:00Z", f'"{first.split("@")[0].upper()}, A." <{first.upper()}>',
                          members[0], "", "travel expenses 4200 - thanks", name])
        if name == "bravo":
            lines.append(["2012-11-05T10:00:00Z", members[2], members[2], "", "note to self", name])
        if name == "charlie":
            lines.append(["", members[0], members[1], "", "lost timestamp", name])
        if name == "delta":
            lines.append(["2012-09-28T10:00:00Z", members[0], members[1], "", "before the quarter", name])
    with open(out_dir / "mail.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["timestamp", "from", "to", "cc", "subject", "team_id"])
        w.writerows(lines)

    with open(out_dir / "survey.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["team_id", "respondent_id"] + ["nps"] + [f"kpd_{i}" for i in range(1, 9)])
        for name, cfg in TEAMS.items():
            for i in range(cfg["respondents"]):
                nps = min(10, max(0, round(rng.gauss(NPS_MEAN[name], 1.6))))
                kpd = [min(7, max(1, round(rng.gauss(KPD_MEAN[name], 1.0)))) for _ in range(8)]
                w.writerow([name, f"{name}-r{i:02d}", nps] + kpd)


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
