#pragma once

// The single table of vocabulary namespaces and terms used across the
// project. Fixtures, readers, writers and tests all reference these
// constants; docs/vocabulary.md documents the same table for humans.

#include <string>

namespace hypersig::vocab {

// Namespace IRIs.
inline const std::string rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string xsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string sh = "http://www.w3.org/ns/shacl#";
inline const std::string hmas = "https://purl.org/hmas/";
inline const std::string hint = "https://purl.org/hmas/interaction#";
inline const std::string hctl = "https://www.w3.org/2019/wot/hypermedia#";
inline const std::string htv = "http://www.w3.org/2011/http#";
inline const std::string js = "https://www.w3.org/2019/wot/json-schema#";
inline const std::string pddl = "http://www.cs.yale.edu/homes/dvm/daml/pddlonto.daml#";
inline const std::string drs = "http://www.cs.yale.edu/homes/dvm/daml/drsonto.daml#";
inline const std::string prs = "https://purl.org/hmas/prs#";
inline const std::string strips = "https://purl.org/hmas/strips#";
inline const std::string manu = "https://purl.org/hmas/manufacturing#";

// hmas core.
inline const std::string hmas_Workspace = hmas + "Workspace";
inline const std::string hmas_Agent = hmas + "Agent";
inline const std::string hmas_Artifact = hmas + "Artifact";
inline const std::string hmas_Signifier = hmas + "Signifier";
inline const std::string hmas_ResourceProfile = hmas + "ResourceProfile";
inline const std::string hmas_AgentProfile = hmas + "AgentProfile";
inline const std::string hmas_ArtifactProfile = hmas + "ArtifactProfile";
inline const std::string hmas_isProfileOf = hmas + "isProfileOf";
inline const std::string hmas_isContainedBy = hmas + "isContainedBy";
inline const std::string hmas_contains = hmas + "contains";

// Interaction vocabulary (signifiers, abilities, interaction log).
inline const std::string hint_signifies = hint + "signifies";
inline const std::string hint_recommendsAbility = hint + "recommendsAbility";
inline const std::string hint_recommendsContext = hint + "recommendsContext";
inline const std::string hint_hasAbility = hint + "hasAbility";
inline const std::string hint_hasSalience = hint + "hasSalience";
inline const std::string hint_Context = hint + "Context";
inline const std::string hint_ActionSpecification = hint + "ActionSpecification";
inline const std::string hint_hasForm = hint + "hasForm";
inline const std::string hint_expects = hint + "expects";
inline const std::string hint_Input = hint + "Input";
inline const std::string hint_hasSchema = hint + "hasSchema";
inline const std::string hint_Interaction = hint + "Interaction";
inline const std::string hint_byAgent = hint + "byAgent";
inline const std::string hint_onResource = hint + "onResource";
inline const std::string hint_sequenceNumber = hint + "sequenceNumber";
inline const std::string hint_outcome = hint + "outcome";
inline const std::string hint_exposesSignifier = hint + "exposesSignifier";

// Hypermedia controls (WoT).
inline const std::string hctl_hasTarget = hctl + "hasTarget";
inline const std::string hctl_forContentType = hctl + "forContentType";
inline const std::string htv_methodName = htv + "methodName";

// SHACL subset.
inline const std::string sh_NodeShape = sh + "NodeShape";
inline const std::string sh_targetNode = sh + "targetNode";
inline const std::string sh_targetClass = sh + "targetClass";
inline const std::string sh_class = sh + "class";
inline const std::string sh_property = sh + "property";
inline const std::string sh_path = sh + "path";
inline const std::string sh_minCount = sh + "minCount";
inline const std::string sh_maxCount = sh + "maxCount";
inline const std::string sh_hasValue = sh + "hasValue";
inline const std::string sh_node = sh + "node";
inline const std::string sh_qualifiedValueShape = sh + "qualifiedValueShape";
inline const std::string sh_qualifiedMinCount = sh + "qualifiedMinCount";

// JSON schema vocabulary (WoT).
inline const std::string js_ObjectSchema = js + "ObjectSchema";
inline const std::string js_IntegerSchema = js + "IntegerSchema";
inline const std::string js_StringSchema = js + "StringSchema";
inline const std::string js_properties = js + "properties";
inline const std::string js_propertyName = js + "propertyName";
inline const std::string js_enum = js + "enum";
inline const std::string js_required = js + "required";
inline const std::string js_minimum = js + "minimum";
inline const std::string js_maximum = js + "maximum";

// PDDL action annotations.
inline const std::string pddl_Action = pddl + "Action";
inline const std::string pddl_action_label = pddl + "action-label";
inline const std::string pddl_parameters = pddl + "parameters";
inline const std::string pddl_Param_seq = pddl + "Param_seq";
inline const std::string pddl_Param = pddl + "Param";
inline const std::string pddl_name = pddl + "name";
inline const std::string pddl_precondition = pddl + "precondition";
inline const std::string pddl_effect = pddl + "effect";
inline const std::string pddl_And = pddl + "And";
inline const std::string pddl_Not = pddl + "Not";
inline const std::string pddl_Atom = pddl + "Atom";
inline const std::string pddl_predicate = pddl + "predicate";
inline const std::string pddl_args = pddl + "args";
inline const std::string pddl_arg = pddl + "arg";
inline const std::string drs_type = drs + "type";

// Agent reasoning abilities.
inline const std::string prs_PRSAbility = prs + "PRSAbility";
inline const std::string prs_hasDesire = prs + "hasDesire";
inline const std::string prs_GoalAchievement = prs + "GoalAchievement";
inline const std::string prs_hasInputList = prs + "hasInputList";
inline const std::string strips_StripsPlanningAbility = strips + "StripsPlanningAbility";

// Manufacturing demo domain.
inline const std::string manu_OperatorAbility = manu + "OperatorAbility";
inline const std::string manu_PickAndPlace = manu + "PickAndPlace";
inline const std::string manu_Item = manu + "Item";
inline const std::string manu_Location = manu + "Location";
inline const std::string manu_RoboticArm = manu + "RoboticArm";
inline const std::string manu_GripperValue = manu + "GripperValue";
inline const std::string manu_OperatorToken = manu + "OperatorToken";
inline const std::string manu_MoveTo = manu + "MoveTo";
inline const std::string manu_CloseGripper = manu + "CloseGripper";
inline const std::string manu_OpenGripper = manu + "OpenGripper";
inline const std::string manu_OperatorLogin = manu + "OperatorLogin";
inline const std::string manu_hasGripperValue = manu + "hasGripperValue";
inline const std::string manu_hasLocation = manu + "hasLocation";
inline const std::string manu_inRangeOf = manu + "inRangeOf";
inline const std::string manu_isAt = manu + "isAt";
inline const std::string manu_holds = manu + "holds";
// STRIPS state predicates.
inline const std::string manu_gripperOpen = manu + "gripperOpen";
inline const std::string manu_armAt = manu + "armAt";
inline const std::string manu_holding = manu + "holding";
inline const std::string manu_itemAt = manu + "itemAt";
inline const std::string manu_inRange = manu + "inRange";
inline const std::string manu_hasToken = manu + "hasToken";

}  // namespace hypersig::vocab
