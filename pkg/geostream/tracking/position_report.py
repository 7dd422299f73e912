from pydantic import BaseModel, ConfigDict, Field

from geostream.geo import GeoPoint, Timestamp


class PositionReport(BaseModel):
    """One decoded AIS position tuple <MMSI, lon, lat, tau>."""

    model_config = ConfigDict(frozen=True)

    mmsi: int = Field(gt=0)
    pos: GeoPoint
    tau: Timestamp

    @classmethod
    def of(cls, mmsi: int, lon: float, lat: float, tau: int) -> "PositionReport":
        return cls(mmsi=mmsi, pos=GeoPoint(lon=lon, lat=lat), tau=tau)
