"""Predictive flexibility aggregation and control for LV feeders.

Layers, bottom to top:

* :mod:`flexgrid.lp` - dense bounded-variable simplex and polyhedra
* :mod:`flexgrid.mplp` - critical-region enumeration for parametric LPs
* :mod:`flexgrid.assets` - PV/battery capability polytopes and tariffs
* :mod:`flexgrid.planning` - day-scale scheduling LP and its value function
* :mod:`flexgrid.period` - market-period parametric problem, solved offline
* :mod:`flexgrid.realtime` - chart projection and setpoint disaggregation
* :mod:`flexgrid.network` - branch-flow central dispatch and power flow
* :mod:`flexgrid.simulate` - closed-loop feeder simulation and benchmarks
* :mod:`flexgrid.cli` - command-line front end
"""

__version__ = "0.1.0"
