import pytest

from egcnet.model import CaseFrame, FavoriteValueDB, SlotRole


@pytest.fixture
def db() -> FavoriteValueDB:
    store = FavoriteValueDB()
    store.set_initial("dog", 0.8)
    store.set_initial("rain", -0.3)
    store.set_initial("walk", 0.8)
    store.set_initial("i", 0.6)
    store.set_initial("storm", -0.7)
    store.set_initial("win", 0.9)
    store.set_personal("alice", "dog", 0.9)
    return store


def frame(event_type: str, **slots: str) -> CaseFrame:
    return CaseFrame(event_type=event_type, slots={SlotRole(k): v for k, v in slots.items()})
