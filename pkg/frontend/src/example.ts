// The reference bike instance, preloaded into the editor as a demo.

export const EXAMPLE_INSTANCE = `% Bike configuration: the repository's reference instance.
%
% A bike is built from a frame, two wheels, and optionally a stand and a
% basket. The customer wants a bike with a basket and 26-inch front wheels.

% candidate types per component
domain(bike,type,city).
domain(bike,type,mountain).
domain(frame,type,f1).
domain(frame,type,f2).
domain(front_wheel,type,w1).
domain(front_wheel,type,w2).
domain(front_wheel,type,w3).
domain(rear_wheel,type,w1).
domain(rear_wheel,type,w2).
domain(rear_wheel,type,w3).
domain(stand,type,s1).
domain(basket,type,b1).

% predefined property values of the types
property_val(f1,material,aluminum).
property_val(f1,basket_support,yes).
property_val(f2,material,carbon_fiber).
property_val(f2,basket_support,no).
property_val(w1,size,28).
property_val(w1,material,aluminum).
property_val(w2,size,26).
property_val(w2,material,aluminum).
property_val(w3,size,24).
property_val(w3,material,aluminum).

% product structure
partof(bike,frame,mandatory).
partof(bike,front_wheel,mandatory).
partof(bike,rear_wheel,mandatory).
partof(bike,stand,optional).
partof(bike,basket,optional).

% a mountain bike can't carry a basket
incompatible_com_pv(basket,(bike,type,mountain)).

% front and rear wheels can't differ in size (all unequal ground pairs,
% stated in both directions)
incompatible_pv_pv((front_wheel,size,28),(rear_wheel,size,26)).
incompatible_pv_pv((front_wheel,size,28),(rear_wheel,size,24)).
incompatible_pv_pv((front_wheel,size,26),(rear_wheel,size,28)).
incompatible_pv_pv((front_wheel,size,26),(rear_wheel,size,24)).
incompatible_pv_pv((front_wheel,size,24),(rear_wheel,size,28)).
incompatible_pv_pv((front_wheel,size,24),(rear_wheel,size,26)).
incompatible_pv_pv((rear_wheel,size,28),(front_wheel,size,26)).
incompatible_pv_pv((rear_wheel,size,28),(front_wheel,size,24)).
incompatible_pv_pv((rear_wheel,size,26),(front_wheel,size,28)).
incompatible_pv_pv((rear_wheel,size,26),(front_wheel,size,24)).
incompatible_pv_pv((rear_wheel,size,24),(front_wheel,size,28)).
incompatible_pv_pv((rear_wheel,size,24),(front_wheel,size,26)).

% a basket needs a stand and a frame that supports it
require_com_com(basket,stand).
require_com_pv(basket,(frame,basket_support,yes)).

% an aluminum frame calls for an aluminum front wheel
require_pv_pv((frame,material,aluminum),(front_wheel,material,aluminum)).

% customer requirements
user_com(req,bike).
user_com(req,basket).
user_com(req,(front_wheel,size,26)).
`;
