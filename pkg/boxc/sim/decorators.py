"""Decorators for simulation registration."""

from typing import Type

from boxc.sim.registry import SimulationRegistry
from boxc.sim.simulation import Simulation


def register_simulation(simulation_class: Type[Simulation]) -> Type[Simulation]:
    """
    Decorator to auto-register simulations with the SimulationRegistry.

    Usage:
        @register_simulation
        class MySimulation(Simulation):
            @property
            def name(self) -> str:
                return "my-simulation"
            ...

    Args:
        simulation_class: The Simulation subclass to register

    Returns:
        The same simulation class (unchanged)
    """
    SimulationRegistry.register(simulation_class)
    return simulation_class
