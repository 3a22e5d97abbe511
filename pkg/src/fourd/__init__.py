"""4D construction scheduling engine.

Links a CPM schedule to 2.5D building geometry through ``Activity_ID``,
derives quantities and costs from the geometry, and renders the schedule
as dated 3D scene snapshots served over HTTP.
"""

__version__ = "0.1.0"
