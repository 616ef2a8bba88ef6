// Copyright 2026 The viewbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Task bank content. Edit only together with kTaskBankChecksum.

#include "taskbank_data.hpp"

namespace viewbench::detail {

const std::uint64_t kTaskBankChecksum = 0x6cfc5db7b06f9381ULL;

const RawTask kRawTasks[12] = {
    {"VS1", "Ego Static Scene", View::VS, Function::Perception,
     {{
         {"VS1_Q1",
          "What is the main road scene ahead?",
          {{"An intersection area.",
            "A straight road segment.",
            "A work-zone or barrier area.",
            "A merge or ramp area."}},
          {{"The main road scene ahead is an intersection area.",
            "The main road scene ahead is a straight road segment.",
            "The main road scene ahead is a work-zone or barrier area.",
            "The main road scene ahead is a merge or ramp area."}}},
         {"VS1_Q2",
          "Which road feature is most important ahead?",
          {{"Junction structure.",
            "Lane-following road.",
            "Barrier or cone guidance.",
            "Ramp-like road split."}},
          {{"The most important road feature ahead is a junction structure.",
            "The most important road feature ahead is a lane-following road.",
            "The most important road feature ahead is barrier or cone guidance.",
            "The most important road feature ahead is a ramp-like road split."}}},
         {"VS1_Q3",
          "How should the scene ahead be grouped?",
          {{"Intersection-type scene.",
            "Regular road scene.",
            "Restricted or guided scene.",
            "Branching road scene."}},
          {{"The scene ahead should be grouped as an intersection-type scene.",
            "The scene ahead should be grouped as a regular road scene.",
            "The scene ahead should be grouped as a restricted or guided scene.",
            "The scene ahead should be grouped as a branching road scene."}}},
     }}},
    {"VS2", "Ego Visible Agents", View::VS, Function::Perception,
     {{
         {"VS2_Q1",
          "What is the main road user ahead?",
          {{"No clear road user ahead.",
            "A car-like vehicle.",
            "A large vehicle.",
            "A person, bike, or motorcycle."}},
          {{"There is no clear road user ahead.",
            "The main road user ahead is a car-like vehicle.",
            "The main road user ahead is a large vehicle.",
            "The main road user ahead is a person, bike, or motorcycle."}}},
         {"VS2_Q2",
          "Which category best fits the key target ahead?",
          {{"None is clearly key.",
            "Passenger vehicle.",
            "Bus or truck.",
            "Small or vulnerable user."}},
          {{"No target is clearly key ahead.",
            "The key target ahead is a passenger vehicle.",
            "The key target ahead is a bus or truck.",
            "The key target ahead is a small or vulnerable road user."}}},
         {"VS2_Q3",
          "Who matters most for the ego path ahead?",
          {{"No one clearly matters most.",
            "A car or SUV.",
            "A truck or bus.",
            "A rider, cyclist, or pedestrian."}},
          {{"No road user clearly matters most for the ego path ahead.",
            "A car or SUV matters most for the ego path ahead.",
            "A truck or bus matters most for the ego path ahead.",
            "A rider, cyclist, or pedestrian matters most for the ego path ahead."}}},
     }}},
    {"VS3", "Ego Risk", View::VS, Function::ReasoningPlanning,
     {{
         {"VS3_Q1",
          "What is the main risk ahead?",
          {{"Cross traffic.",
            "A leading vehicle.",
            "A vulnerable road user.",
            "No clear risk."}},
          {{"The main risk ahead is cross traffic.",
            "The main risk ahead is a leading vehicle.",
            "The main risk ahead is a vulnerable road user.",
            "There is no clear risk ahead."}}},
         {"VS3_Q2",
          "Which hazard is most important now?",
          {{"Blurred visibility or wet road surface.",
            "Vehicle conflict.",
            "Pedestrian or rider conflict.",
            "No obvious hazard."}},
          {{"The most important hazard now is blurred visibility or a wet road surface.",
            "The most important hazard now is a front or side vehicle conflict.",
            "The most important hazard now is a pedestrian or rider conflict.",
            "There is no obvious hazard now."}}},
         {"VS3_Q3",
          "What should the ego pay most attention to?",
          {{"Traffic from the side.",
            "Traffic directly ahead.",
            "People or two-wheelers nearby.",
            "Nothing stands out strongly."}},
          {{"The ego should pay most attention to traffic from the side.",
            "The ego should pay most attention to traffic directly ahead.",
            "The ego should pay most attention to people or two-wheelers nearby.",
            "Nothing stands out strongly for the ego to attend to."}}},
     }}},
    {"VS4", "Ego Prediction", View::VS, Function::Prediction,
     {{
         {"VS4_Q1",
          "What will the ego vehicle likely do next?",
          {{"Go straight.",
            "Slow down.",
            "Turn or change lanes.",
            "It is unclear."}},
          {{"The ego vehicle will likely go straight next.",
            "The ego vehicle will likely slow down next.",
            "The ego vehicle will likely turn or change lanes next.",
            "The next action of the ego vehicle is unclear."}}},
         {"VS4_Q2",
          "How is the ego vehicle likely to move?",
          {{"Keep moving forward.",
            "Make a left turn.",
            "Make a right turn.",
            "Change lanes."}},
          {{"The ego vehicle is likely to keep moving forward.",
            "The ego vehicle is likely to make a left turn.",
            "The ego vehicle is likely to make a right turn.",
            "The ego vehicle is likely to change lanes."}}},
         {"VS4_Q3",
          "What is the most likely next action of the ego vehicle?",
          {{"Go straight.",
            "Turn left.",
            "Turn right.",
            "Change lanes."}},
          {{"The most likely action is to go straight.",
            "The most likely action is to turn left.",
            "The most likely action is to turn right.",
            "The most likely action is to change lanes."}}},
     }}},
    {"IS1", "RSU Global Layout", View::IS, Function::Perception,
     {{
         {"IS1_Q1",
          "What is the most prominent layout feature in this RSU view?",
          {{"A regular intersection.",
            "A curved road approach.",
            "Strong turn guidance.",
            "A complex layout."}},
          {{"The most prominent layout feature in this RSU view is a regular intersection.",
            "The most prominent layout feature in this RSU view is a curved road approach.",
            "The most prominent layout feature in this RSU view is strong turn guidance.",
            "The most prominent layout feature in this RSU view is a complex layout."}}},
         {"IS1_Q2",
          "Which intersection feature stands out most in this RSU view?",
          {{"A regular intersection shape.",
            "A curved approach road.",
            "Clear turn guidance.",
            "A complex road layout."}},
          {{"The most prominent feature in this RSU view is a regular intersection shape.",
            "The most prominent feature in this RSU view is a curved approach road.",
            "The most prominent feature in this RSU view is clear turn guidance.",
            "The most prominent feature in this RSU view is a complex road layout."}}},
         {"IS1_Q3",
          "How should this RSU-view intersection be described?",
          {{"A standard intersection.",
            "An intersection with a curved approach.",
            "An intersection with strong turn guidance.",
            "An intersection with a complex layout."}},
          {{"This RSU-view intersection is best described as a standard intersection.",
            "This RSU-view intersection is best described as an intersection with a curved approach.",
            "This RSU-view intersection is best described as an intersection with strong turn guidance.",
            "This RSU-view intersection is best described as an intersection with a complex layout."}}},
     }}},
    {"IS2", "RSU Traffic Agents", View::IS, Function::Perception,
     {{
         {"IS2_Q1",
          "What best describes the traffic in the RSU view?",
          {{"Light traffic.",
            "Many cars close together.",
            "Mixed traffic with vulnerable users.",
            "A large vehicle stands out."}},
          {{"The RSU view shows light traffic.",
            "The RSU view shows many cars close together.",
            "The RSU view shows mixed traffic with vulnerable users.",
            "The RSU view is dominated by a large vehicle."}}},
         {"IS2_Q2",
          "Which traffic pattern is most clear?",
          {{"Sparse movement.",
            "Dense vehicle group.",
            "Mixed road users.",
            "One large vehicle."}},
          {{"The clearest traffic pattern is sparse movement.",
            "The clearest traffic pattern is a dense vehicle group.",
            "The clearest traffic pattern is mixed road users.",
            "The clearest traffic pattern is one large vehicle."}}},
         {"IS2_Q3",
          "What is the key traffic feature here?",
          {{"Few active agents.",
            "Clustered vehicles.",
            "Different user types.",
            "A standout truck or bus."}},
          {{"The key traffic feature is few active agents.",
            "The key traffic feature is clustered vehicles.",
            "The key traffic feature is different user types.",
            "The key traffic feature is a standout truck or bus."}}},
     }}},
    {"IS3", "RSU Global Risk", View::IS, Function::ReasoningPlanning,
     {{
         {"IS3_Q1",
          "What is the main global risk?",
          {{"A wet road surface.",
            "Dense vehicle interaction.",
            "Vulnerable road users.",
            "No clear global risk."}},
          {{"The main global risk is a wet road surface.",
            "The main global risk is dense vehicle interaction.",
            "The main global risk is vulnerable road users.",
            "There is no clear global risk."}}},
         {"IS3_Q2",
          "Which risk matters most in the RSU view?",
          {{"A wet slippery surface.",
            "Crowded traffic flow.",
            "Pedestrian or rider exposure.",
            "Nothing stands out strongly."}},
          {{"The most important RSU-view risk is a wet slippery surface.",
            "The most important RSU-view risk is crowded traffic flow.",
            "The most important RSU-view risk is pedestrian or rider exposure.",
            "No risk stands out strongly in the RSU view."}}},
         {"IS3_Q3",
          "What deserves the most caution here?",
          {{"A wet road surface.",
            "Heavy interaction among vehicles.",
            "Nearby vulnerable users.",
            "No major caution point."}},
          {{"The main caution point is a wet road surface.",
            "The main caution point is heavy interaction among vehicles.",
            "The main caution point is nearby vulnerable users.",
            "There is no major caution point."}}},
     }}},
    {"IS4", "RSU Long-Range Cues", View::IS, Function::ReasoningPlanning,
     {{
         {"IS4_Q1",
          "What is the clearest long-range cue?",
          {{"A far large vehicle.",
            "A far vehicle group.",
            "A work zone ahead.",
            "No strong long-range cue."}},
          {{"The clearest long-range cue is a far large vehicle.",
            "The clearest long-range cue is a far vehicle group.",
            "The clearest long-range cue is a work zone ahead.",
            "There is no strong long-range cue."}}},
         {"IS4_Q2",
          "Which distant feature stands out most?",
          {{"A distant truck or bus.",
            "A distant traffic cluster.",
            "A distant work zone.",
            "Nothing distant stands out."}},
          {{"The most salient distant feature is a truck or bus.",
            "The most salient distant feature is a traffic cluster.",
            "The most salient distant feature is a work zone.",
            "No distant feature stands out."}}},
         {"IS4_Q3",
          "What useful far-field cue is visible?",
          {{"A large far-field agent.",
            "A far buildup of traffic.",
            "A far work zone.",
            "No obvious far-field cue."}},
          {{"The useful far-field cue is a large far-field agent.",
            "The useful far-field cue is a far buildup of traffic.",
            "The useful far-field cue is a far work zone.",
            "There is no obvious far-field cue."}}},
     }}},
    {"CO1", "Cooperative Scene Understanding", View::CO, Function::Perception,
     {{
         {"CO1_Q1",
          "With both views, what best describes the ego path?",
          {{"The path looks clear.",
            "Cross traffic affects the path.",
            "The path is constrained.",
            "The path is still unclear."}},
          {{"With both views, the ego path looks clear.",
            "With both views, cross traffic affects the ego path.",
            "With both views, the ego path is constrained.",
            "With both views, the ego path is still unclear."}}},
         {"CO1_Q2",
          "What is the main joint scene result?",
          {{"Open path ahead.",
            "Crossing activity matters.",
            "The lane area is limited.",
            "Joint evidence remains weak."}},
          {{"The main joint scene result is an open path ahead.",
            "The main joint scene result is that crossing activity matters.",
            "The main joint scene result is that the lane area is limited.",
            "The main joint scene result is that the joint evidence remains weak."}}},
         {"CO1_Q3",
          "How should the cooperative scene be summarized?",
          {{"Mostly clear forward scene.",
            "Cross-view conflict scene.",
            "Restricted-path scene.",
            "Uncertain combined scene."}},
          {{"The cooperative scene is best summarized as a mostly clear forward scene.",
            "The cooperative scene is best summarized as a cross-view conflict scene.",
            "The cooperative scene is best summarized as a restricted-path scene.",
            "The cooperative scene is best summarized as an uncertain combined scene."}}},
     }}},
    {"CO2", "Cooperative Visibility", View::CO, Function::Perception,
     {{
         {"CO2_Q1",
          "What does cooperation add most?",
          {{"An occluded road user becomes clear.",
            "A blurred ego-view scene becomes clear.",
            "A long-range cue becomes clear.",
            "It adds little new information."}},
          {{"Cooperation mainly makes an occluded road user clear.",
            "Cooperation mainly makes a blurred ego-view scene clear.",
            "Cooperation mainly makes a long-range cue clear.",
            "Cooperation adds little new information."}}},
         {"CO2_Q2",
          "Which missing cue is best recovered by cooperation?",
          {{"An occluded road-user cue.",
            "A cue missing from the blurred ego view.",
            "A long-range cue.",
            "No important cue is recovered."}},
          {{"The best recovered missing cue is an occluded road-user cue.",
            "The best recovered missing cue is a cue missing from the blurred ego view.",
            "The best recovered missing cue is a long-range cue.",
            "No important cue is recovered."}}},
         {"CO2_Q3",
          "What is the main value of the second view?",
          {{"It reveals an occluded road user.",
            "It clarifies a blurred ego view.",
            "It provides a long-range cue.",
            "Its added value is limited."}},
          {{"The main value of the second view is that it reveals an occluded road user.",
            "The main value of the second view is that it clarifies a blurred ego view.",
            "The main value of the second view is that it provides a long-range cue.",
            "The added value of the second view is limited."}}},
     }}},
    {"CO3", "Cooperative Prediction", View::CO, Function::Prediction,
     {{
         {"CO3_Q1",
          "With both views, what will the ego vehicle do next?",
          {{"Go straight.",
            "Make a left turn.",
            "Make a right turn.",
            "Change lanes."}},
          {{"With both views, the ego vehicle will likely go straight next.",
            "With both views, the ego vehicle will likely make a left turn next.",
            "With both views, the ego vehicle will likely make a right turn next.",
            "With both views, the ego vehicle will likely change lanes."}}},
         {"CO3_Q2",
          "What motion is most likely for the ego vehicle after combining views?",
          {{"Go straight.",
            "Make a left turn.",
            "Make a right turn.",
            "Change lanes."}},
          {{"After combining views, the ego vehicle is most likely to go straight.",
            "After combining views, the ego vehicle is most likely to make a left turn.",
            "After combining views, the ego vehicle is most likely to make a right turn.",
            "After combining views, the ego vehicle is most likely to change lanes."}}},
         {"CO3_Q3",
          "What is the best cooperative prediction for the ego vehicle?",
          {{"Go straight.",
            "Make a left turn.",
            "Make a right turn.",
            "Change lanes."}},
          {{"The best short-term cooperative prediction for the ego vehicle is to go straight.",
            "The best short-term cooperative prediction for the ego vehicle is to make a left turn.",
            "The best short-term cooperative prediction for the ego vehicle is to make a right turn.",
            "The best short-term cooperative prediction for the ego vehicle is to change lanes."}}},
     }}},
    {"CO4", "Cooperative Planning", View::CO, Function::ReasoningPlanning,
     {{
         {"CO4_Q1",
          "With both views, what should the ego vehicle do immediately?",
          {{"Accelerate.",
            "Reduce speed.",
            "Keep the current speed.",
            "Yield or prepare to stop."}},
          {{"With both views, the ego vehicle should accelerate.",
            "With both views, the ego vehicle should reduce speed.",
            "With both views, the ego vehicle should keep the current speed.",
            "With both views, the ego vehicle should yield or prepare to stop."}}},
         {"CO4_Q2",
          "With both views, what is the best immediate ego action?",
          {{"Accelerate.",
            "Reduce speed.",
            "Keep the current speed.",
            "Yield or prepare to stop."}},
          {{"With both views, the best immediate ego action is to accelerate.",
            "With both views, the best immediate ego action is to reduce speed.",
            "With both views, the best immediate ego action is to keep the current speed.",
            "With both views, the best immediate ego action is to yield or prepare to stop."}}},
         {"CO4_Q3",
          "With both views, what is the best immediate planning choice?",
          {{"Pick up speed.",
            "Slow down.",
            "Maintain the current speed.",
            "Yield or get ready to stop."}},
          {{"With both views, the best immediate planning choice is to pick up speed.",
            "With both views, the best immediate planning choice is to slow down.",
            "With both views, the best immediate planning choice is to maintain the current speed.",
            "With both views, the best immediate planning choice is to yield or get ready to stop."}}},
     }}},
};

}  // namespace viewbench::detail
