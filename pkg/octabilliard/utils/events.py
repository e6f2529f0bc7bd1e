from enum import Enum
from typing import Iterator, Type

from statemachine import Event

EnumType = Type[Enum]


class Events:
    """
    Named collection of statemachine ``Event`` objects.

    Lets a ``StateMachine`` declare its events from an ``Enum``, the same way
    ``States.from_enum`` declares its states, so both sides of a transition
    table are spelled with enum member names.
    """

    def __init__(self, events: dict[str, Event] | None = None) -> None:
        self._events: dict[str, Event] = events or {}

    @classmethod
    def from_enum(cls, enum_type: EnumType) -> "Events":
        return cls({e.name: Event(id=e.name, name=e.value) for e in enum_type})

    def __getattr__(self, name: str) -> Event:
        events = self.__dict__.get("_events", {})
        if name in events:
            return events[name]
        raise AttributeError(f"{name} not found in {self.__class__.__name__}")

    def __contains__(self, name: str) -> bool:
        return name in self._events

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self._events.values())

    def __repr__(self) -> str:
        return f"Events({sorted(self._events)})"
