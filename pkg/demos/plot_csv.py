"""Render a CSV written by ``kerrscope`` (sweep-detuning, sweep-drive, estimate-alpha).

    kerrscope sweep-detuning --out sweep.csv
    python demos/plot_csv.py sweep.csv
"""
import sys

import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1]
data = np.genfromtxt(path, delimiter=",", names=True, comments="#",
                     dtype=None, encoding="utf-8")
fig, ax = plt.subplots()
for engine in np.unique(data["engine"]):
    rows = data[data["engine"] == engine]
    ax.plot(rows["axis"], rows["mean_n"], label=f"<n> ({engine})")
    if np.isfinite(rows["phi_plus"]).any():
        ax.plot(rows["axis"], rows["phi_plus"], "--", label="Phi+")
        ax.plot(rows["axis"], rows["phi_minus"], ":", label="Phi-")
ax.set_xlabel("axis")
ax.legend()
plt.show()
