import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from app.models.firm.scenario import FirmScenario
from app.models.group import GroupModel
from app.models.oracle.cycle import OracleConfig, TaskSpec
from app.services.market.pricing import hurwicz_select, operational_uncertainty_from_hurwicz
from app.utils.errors import DomainError, ScenarioError
from app.utils.logging_util import logger

TOP_LEVEL_KEYS = {"firm", "members", "market", "cost_breakdowns", "tasks", "oracle", "group"}
FIRM_KEYS = {"levels", "royalty_rate", "sales", "costs", "existence_uncertainty", "budgets"}


class HurwiczUncertainty(BaseModel):
    """Operational uncertainty given as a Hurwicz choice instead of a number."""
    model_config = ConfigDict(frozen=True)

    expected_payoff: float = Field(allow_inf_nan=False)
    optimism: float = Field(ge=0, le=1)
    options: List[Tuple[float, float]] = Field(min_length=1)


class ScenarioBundle(BaseModel):
    """Everything one scenario file describes."""
    model_config = ConfigDict(frozen=True)

    scenario: FirmScenario
    tasks: List[TaskSpec] = Field(default_factory=list)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    group: Optional[GroupModel] = None


def _format_loc(loc: Tuple[Union[str, int], ...]) -> str:
    parts: List[str] = []
    for item in loc:
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(f".{item}" if parts else str(item))
    return "".join(parts)


class ScenarioLoaderService:
    """
    Reads a scenario JSON document and validates it into a ScenarioBundle.

    Parse errors carry the line number; validation errors carry the dotted
    field path of the first offending value.
    """

    def __init__(self):
        self.logger = logger

    def load(self, path: Union[str, Path]) -> ScenarioBundle:
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        bundle = self.parse(text)
        self.logger.info(
            f"Loaded scenario {path.name}: {len(bundle.scenario.members)} members, "
            f"{len(bundle.tasks)} tasks, {bundle.scenario.levels} levels"
        )
        return bundle

    def parse(self, text: str) -> ScenarioBundle:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"invalid JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from exc

        if not isinstance(document, dict):
            raise ScenarioError("scenario must be a JSON object")
        unknown = sorted(set(document) - TOP_LEVEL_KEYS)
        if unknown:
            raise ScenarioError(f"unknown top-level keys: {', '.join(unknown)}")
        if "firm" not in document:
            raise ScenarioError("missing required section", field="firm")

        firm = document["firm"]
        if not isinstance(firm, dict):
            raise ScenarioError("must be an object", field="firm")

        raw_scenario = {
            **firm,
            "members": document.get("members", []),
            "market": document.get("market", {}),
            "cost_breakdowns": self._resolve_breakdowns(document.get("cost_breakdowns", [])),
        }
        scenario = self._validate(FirmScenario, raw_scenario, root=None)
        tasks = [
            self._validate(TaskSpec, task, root=f"tasks[{i}]")
            for i, task in enumerate(self._as_list(document.get("tasks", []), "tasks"))
        ]
        oracle = self._validate(OracleConfig, document.get("oracle", {}), root="oracle")
        group = None
        if document.get("group") is not None:
            group = self._validate(GroupModel, document["group"], root="group")

        return ScenarioBundle(scenario=scenario, tasks=tasks, oracle=oracle, group=group)

    # ---------------------------------------------------------
    # INTERNAL HELPERS
    # ---------------------------------------------------------
    @staticmethod
    def _as_list(value: Any, field: str) -> List[Any]:
        if not isinstance(value, list):
            raise ScenarioError("must be a list", field=field)
        return value

    def _resolve_breakdowns(self, breakdowns: Any) -> List[Any]:
        resolved = []
        for i, item in enumerate(self._as_list(breakdowns, "cost_breakdowns")):
            uncertainty = item.get("operational_uncertainty") if isinstance(item, dict) else None
            if isinstance(uncertainty, dict):
                field = f"cost_breakdowns[{i}].operational_uncertainty"
                block = self._validate(HurwiczUncertainty, uncertainty, root=field)
                try:
                    _, value = hurwicz_select(block.options, block.optimism)
                except DomainError as exc:
                    raise ScenarioError(str(exc), field=field) from exc
                item = {**item, "operational_uncertainty": operational_uncertainty_from_hurwicz(
                    block.expected_payoff, value
                )}
                self.logger.debug(f"{field}: Hurwicz value {value:g} -> U_O {item['operational_uncertainty']:g}")
            resolved.append(item)
        return resolved

    @staticmethod
    def _validate(model: type, data: Any, root: Optional[str]):
        try:
            return model.model_validate(data)
        except ValidationError as exc:
            error = exc.errors()[0]
            loc = tuple(error["loc"])
            if root is None and loc and loc[0] in FIRM_KEYS:
                loc = ("firm",) + loc
            path = _format_loc(loc)
            if root:
                path = f"{root}.{path}" if path and not path.startswith("[") else f"{root}{path}"
            message = error["msg"].removeprefix("Value error, ")
            raise ScenarioError(message, field=path or root) from exc


# ---------------------------------------------------------
# SINGLETON INSTANCE
# ---------------------------------------------------------
scenario_loader = ScenarioLoaderService()


def load_scenario(path: Union[str, Path]) -> ScenarioBundle:
    return scenario_loader.load(path)
