#!/usr/bin/env python3
"""Spreadsheet-style theta for fixtures/triangle_v2.csv (cycle ETH->USDC->USDT->ETH)."""
import csv
import os
from collections import defaultdict

FIX = os.path.join(os.path.dirname(__file__), "..", "fixtures")
by_hour = defaultdict(dict)
for r in csv.DictReader(open(os.path.join(FIX, "triangle_v2.csv"))):
    by_hour[int(r["ts_hour"])][r["pair"]] = float(r["y"]) / float(r["x"])
for h, q in sorted(by_hour.items()):
    theta = q["ETH-USDC"] * q["USDC-USDT"] * q["USDT-ETH"] - 1
    print(f"{h},{theta:.17g}")
